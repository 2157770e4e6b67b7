"""Named elements of a Kodaira model, with 1-based indices as in the math."""

from __future__ import annotations

from typing import Sequence

from .errors import NonKodairaModelError
from .exterior import GeneratorId, Multivector, wedge
from .lie import AlgebraModel
from .scalars import GaussianRational

HALF = GaussianRational("1/2")


class KodairaElements:
    """Shorthand for T_j, W, ob_j, orho, phi_jk and psi_jk in a Kodaira model."""

    def __init__(self, model: AlgebraModel):
        if not model.kodaira_n:
            raise NonKodairaModelError(f"model {model.name!r} is not a Kodaira model")
        self.model = model
        self.n = model.kodaira_n
        self.W = model.gen(GeneratorId.vector(self.n))
        self.rho = model.gen(GeneratorId.form(self.n))

    def T(self, j: int) -> Multivector:
        self._check(j)
        return self.model.gen(GeneratorId.vector(j - 1))

    def ob(self, j: int) -> Multivector:
        self._check(j)
        return self.model.gen(GeneratorId.form(j - 1))

    def _check(self, j: int) -> None:
        if not 1 <= j <= self.n:
            raise IndexError(f"index {j} outside 1..{self.n}")

    def phi(self, j: int, k: int) -> Multivector:
        return (wedge(self.T(j), self.ob(k)) + wedge(self.T(k), self.ob(j))) * HALF

    def psi(self, j: int, k: int) -> Multivector:
        return (wedge(self.T(j), self.ob(k)) - wedge(self.T(k), self.ob(j))) * HALF

    def T_sum(self, coeffs: Sequence) -> Multivector:
        out = self.model.zero()
        for j, c in enumerate(coeffs, start=1):
            out += self.T(j) * c
        return out

    def ob_sum(self, coeffs: Sequence) -> Multivector:
        out = self.model.zero()
        for j, c in enumerate(coeffs, start=1):
            out += self.ob(j) * c
        return out

    def ob_total(self) -> Multivector:
        """The product ob_1 ^ ... ^ ob_n."""
        out = Multivector.scalar(self.model.frame, 1)
        for j in range(1, self.n + 1):
            out = wedge(out, self.ob(j))
        return out
