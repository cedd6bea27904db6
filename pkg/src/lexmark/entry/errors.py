class BindingError(ValueError):
    """Base class for failures while binding a generic tree to an entry model."""


class UnknownElementError(BindingError):
    def __init__(self, name: str, line: int = 0, column: int = 0, context: str = ""):
        self.name = name
        self.line = line
        self.column = column
        where = f" in <{context}>" if context else ""
        super().__init__(f"unknown element <{name}>{where} at line {line}, column {column}")


class MissingHeadwordError(BindingError):
    def __init__(self, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"headword form without <orth> at line {line}, column {column}")


class DanglingLinkError(BindingError):
    def __init__(self, id_value: str, role: str):
        self.id = id_value
        self.role = role
        super().__init__(f"etymologicalLink {role} {id_value!r} does not resolve in the entry")
