# greatroot/models/enums.py
import enum


class Ensemble(str, enum.Enum):
    REAL = "real"          # orthogonal ensemble, Tracy-Widom beta = 1
    COMPLEX = "complex"    # unitary ensemble, Tracy-Widom beta = 2

    @property
    def beta_index(self) -> int:
        return 1 if self is Ensemble.REAL else 2


class ScaleKind(str, enum.Enum):
    X = "x"
    U = "u"
    LOGIT = "logit"
    THETA = "theta"


class Caveat(str, enum.Enum):
    P_ODD = "p_odd"                        # real case with min(p, n) odd
    HARD_EDGE = "hard_edge"                # m = p, upper turning point at 1
    EXTRAPOLATED_TAIL = "extrapolated_tail"
    UNDERFLOW = "underflow"


class Setting(str, enum.Enum):
    RAW = "raw"
    CCA = "cca"
    MLM = "mlm"
    COV_EQUAL = "cov_equal"
    DISCRIM = "discrim"
    SUBSPACE = "subspace"


CAVEAT_MESSAGES = {
    Caveat.P_ODD: "min(p, n) is odd: the real-case edge approximation is established for even dimension; formulas applied unchanged",
    Caveat.HARD_EDGE: "m = p: the upper turning point sits at 1 (hard edge); soft-edge scaling is not available",
    Caveat.EXTRAPOLATED_TAIL: "Tracy-Widom value extrapolated beyond the tabulated grid by tail asymptotics",
    Caveat.UNDERFLOW: "weighted polynomial underflowed to exactly 0 on part of the grid",
}
