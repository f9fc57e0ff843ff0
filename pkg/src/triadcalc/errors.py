"""Exception hierarchy shared by every module."""


class TriadError(ValueError):
    """Malformed triad, term set or term reference."""


class PolarityClash(TriadError):
    def __init__(self, message="polarity clash"):
        super().__init__(message)


class CapacityError(TriadError):
    """A carrier is too large for the requested computation."""


class ParseError(TriadError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = []
        if source:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class ConsistencyError(RuntimeError):
    """Two characterizations that must agree disagreed: an implementation bug."""


class DesignError(TriadError):
    """Ill-formed design (arity, linearity, cut-freeness, unknown name)."""


class FuelExceeded(RuntimeError):
    def __init__(self, fuel):
        self.fuel = fuel
        super().__init__(f"fuel exceeded ({fuel} steps)")
