"""Exception types.  Each carries a stable ``code`` used by the CLI."""


class OG10Error(Exception):
    code = "OG10Error"
    # validation errors map to exit status 2 in the CLI, everything else to 1
    validation = False

    def __init__(self, detail: str = "", **data):
        super().__init__(detail or self.code)
        self.detail = detail
        self.data = data


class ValidationError(OG10Error):
    code = "InvalidInput"
    validation = True


class NotSymmetric(ValidationError):
    code = "NotSymmetric"


class NotEven(ValidationError):
    code = "NotEven"


class Degenerate(ValidationError):
    code = "Degenerate"


class DimensionMismatch(ValidationError):
    code = "DimensionMismatch"


class ZeroVector(ValidationError):
    code = "ZeroVector"


class NotPrimitive(ValidationError):
    code = "NotPrimitive"


class NonNegativeSquare(ValidationError):
    code = "NonNegativeSquare"


class NotOG10Ambient(ValidationError):
    code = "NotOG10Ambient"


class NotOG10Vector(ValidationError):
    code = "NotOG10Vector"


class NotCubicGram(ValidationError):
    code = "NotCubicGram"


class UnknownPreset(ValidationError):
    code = "UnknownPreset"


class NoU2Witness(OG10Error):
    code = "NoU2Witness"


class RankTooLarge(OG10Error):
    code = "RankTooLarge"


class WrongDiscriminant(OG10Error):
    code = "WrongDiscriminant"


class NotIntegral(OG10Error):
    code = "NotIntegral"


class NotHalfIntegral(OG10Error):
    code = "NotHalfIntegral"


class Inconsistent(OG10Error):
    code = "Inconsistent"


class NotProportionalToWall(OG10Error):
    code = "NotProportionalToWall"


class EmbeddingNotFound(OG10Error):
    code = "EmbeddingNotFound"


class OnWall(OG10Error):
    code = "OnWall"


class NotPositive(ValidationError):
    code = "NotPositive"
