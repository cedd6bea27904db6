from .errors import BindingError, DanglingLinkError, MissingHeadwordError, UnknownElementError
from .iso import IsoClass, IsoEntry, IsoNode, bind_iso, classify_iso
from .lmf import EtymologicalLink, Etymon, LmfEntry, LmfEtymology, bind_lmf, unbind_lmf
from .tei import (
    PERMISSIVE,
    STRICT,
    Bibl,
    Cit,
    Def,
    Etym,
    Form,
    Gen,
    Gram,
    GramGrp,
    Number,
    Opaque,
    Orth,
    Pos,
    Pron,
    Quote,
    Ref,
    Sense,
    TeiEntry,
    Usg,
    Xr,
    bind_tei,
    find_entries,
    unbind_tei,
)
