"""Typed errors and warnings shared across the library."""


class KGHulthenError(Exception):
    """Base class for every library-specific error."""


class InvalidParams(KGHulthenError):
    """Constructor or argument validation failed."""


class PoleAtRadius(KGHulthenError):
    """The potential denominator 1 - q e^(-alpha r) vanished within tolerance."""

    def __init__(self, r, q, alpha):
        self.r = r
        self.q = q
        self.alpha = alpha
        super().__init__(
            f"potential pole within tolerance at r={r:.12g} (q={q}, alpha={alpha})"
        )


class NoRealK(KGHulthenError):
    """No real k makes the square-root argument a perfect square."""


class NoPhysicalBranch(KGHulthenError):
    """No candidate branch has a decreasing tau (tau' < 0)."""


class UnsupportedSigma(KGHulthenError):
    """sigma(s) fits neither of the factored families s(1-s), 1-s^2."""


class NonRealA(KGHulthenError):
    """The radicand of the shape parameter a is negative."""

    def __init__(self, radicand):
        self.radicand = radicand
        super().__init__(f"shape parameter a is not real: radicand = {radicand:.12g}")


class ConstraintViolated(KGHulthenError):
    """A closed-form existence inequality failed.

    The inequality is reported as lhs >= rhs together with a short name.
    """

    def __init__(self, constraint, lhs, rhs):
        self.constraint = constraint
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"{constraint}: {lhs:.12g} < {rhs:.12g}")


class NoRoot(KGHulthenError):
    """The transcendental energy equation has no root in the open window."""


class DegenerateLevelSpacing(KGHulthenError):
    """n + delta vanished, leaving the energy equation ill-defined."""


class NoSignChange(KGHulthenError):
    """The shooting mismatch keeps one sign over the requested bracket."""


class QuadratureFailure(KGHulthenError):
    """Adaptive quadrature could not reach the requested accuracy."""


class InvalidQuantumNumbers(KGHulthenError):
    """An angular quantum-number chain violates its ordering constraints."""


class ConfigError(KGHulthenError):
    """Command-line configuration is unusable."""


class DegenerateDiscriminantWarning(UserWarning):
    """The perfect-square check passed only marginally (near tolerance)."""
