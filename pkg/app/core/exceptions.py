from typing import Optional


class CfvsError(Exception):
    """Base error; `detail` is what the CLI prints, `exit_code` what it returns."""

    exit_code: int = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class GraphFormatError(CfvsError):
    def __init__(self, detail: str, line: Optional[int] = None):
        if line is not None:
            detail = f"line {line}: {detail}"
        super().__init__(detail)
        self.line = line


class InvalidInstanceError(CfvsError):
    pass


class InvalidDecompositionError(CfvsError):
    pass


class WidthLimitExceededError(CfvsError):
    def __init__(self, width: int, max_width: int):
        super().__init__(f"decomposition width {width} exceeds --max-width {max_width}")
        self.width = width
        self.max_width = max_width


class SolutionInvariantError(CfvsError):
    pass


class SteinerConsistencyError(CfvsError):
    pass


class DpInvariantError(CfvsError):
    pass
