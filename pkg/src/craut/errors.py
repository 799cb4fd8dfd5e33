"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed input; carries 1-based ``line`` and ``column``."""

    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.column = col
        self.msg = msg


class ModelValidationError(ValueError):
    """A model file is inconsistent; ``problems`` lists every issue found."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class ClosureError(ValueError):
    """A bracket of two basis fields left their span."""

    def __init__(self, a: int, b: int):
        super().__init__(f"bracket of basis elements {a} and {b} is not in the span")
        self.pair = (a, b)


class UnconvergedError(RuntimeError):
    """The solution dimension changed when the degree bounds were raised."""

    def __init__(self, dim: int, dim_next: int):
        super().__init__(f"dimension {dim} at the requested bounds but {dim_next} at bounds+1")
        self.dims = (dim, dim_next)
