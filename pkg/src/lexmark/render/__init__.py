from .paradigm import (
    CASES,
    NUMBERS,
    ParadigmTable,
    deumlaut,
    expand_paradigm,
    overlap,
    resolve_suffix,
)
from .views import (
    RenderOptions,
    RenderWarning,
    Token,
    expanded_tokens,
    gender_label,
    html_element,
    print_tokens,
    render_expanded,
    render_html,
    render_print,
)


def render(entry, opts: RenderOptions) -> str:
    """Dispatch on ``opts.media``."""
    return {"print": render_print, "expanded": render_expanded, "html": render_html}[opts.media](entry, opts)
