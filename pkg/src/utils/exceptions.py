class AtlasError(Exception):
    pass


class SingularCurveError(AtlasError):
    def __init__(self, coefficients):
        self.coefficients = tuple(coefficients)
        super().__init__(f"Singular curve (discriminant 0): {list(map(str, self.coefficients))}")


class UnsupportedInputError(AtlasError):
    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(f"Unsupported input: {detail}")


class InvariantViolationError(AtlasError):
    def __init__(self, invariant: str, detail: str):
        self.invariant = invariant
        self.detail = detail
        super().__init__(f"Invariant violated [{invariant}]: {detail}")


class SporadicDataError(AtlasError):
    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"Bad sporadic isogeny data in {path}: {reason}")


class CurveParseError(AtlasError):
    def __init__(self, text: str, reason: str):
        self.text = text
        self.reason = reason
        super().__init__(f"Cannot parse curve {text!r}: {reason}")


class FixtureError(AtlasError):
    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"Bad fixture file {path}: {reason}")
