"""Samplers for the two built-in max-mixture benchmark models.

Both models are built from independent Pareto variables Z1, Z2, Z3 with
survival P(Z > z) = z**(-1/gamma) on [1, inf) and gammas (0.3, 0.4, 0.4):

  example1: X = max(Z1, Z2), Y = max(Z1, Z3)
  example2: (X, Y) = (Z1, Z1) with probability 1/2, else (Z2, Z3)

Both have X-tail index gamma1 = 0.4 and tail dependence coefficient
eta = 3/4, i.e. asymptotic independence with positive association.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, DomainError
from .ranks import PairedSample

VARIANTS = ("example1", "example2")


@dataclass(frozen=True)
class ModelSpec:
    variant: str
    gamma_z1: float = 0.3
    gamma_z2: float = 0.4
    gamma_z3: float = 0.4
    bernoulli_p: float = 0.5  # example2 mixing weight on the (Z1, Z1) branch

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ArgumentError(f"unknown variant {self.variant!r}, expected one of {VARIANTS}")
        for name in ("gamma_z1", "gamma_z2", "gamma_z3"):
            if getattr(self, name) <= 0:
                raise ArgumentError(f"{name} must be > 0")
        if not 0.0 < self.bernoulli_p < 1.0:
            raise ArgumentError("bernoulli_p must lie in (0, 1)")

    def _require_symmetric_tail(self):
        # The derived tail metadata below is worked out for the shipped
        # structure: a common light factor Z1 and identical heavier
        # margins driven by Z2, Z3.
        if not (self.gamma_z2 == self.gamma_z3 and self.gamma_z1 < self.gamma_z2):
            raise DomainError(
                "tail metadata requires gamma_z2 == gamma_z3 > gamma_z1; "
                f"got ({self.gamma_z1}, {self.gamma_z2}, {self.gamma_z3})")

    @property
    def gamma1(self) -> float:
        """Tail index of the X margin."""
        self._require_symmetric_tail()
        return self.gamma_z2

    @property
    def eta(self) -> float:
        """Coefficient of tail dependence: joint exceedances of both
        margins are driven by the common factor Z1, so the joint tail
        decays like t**(-gamma1/gamma_z1)."""
        self._require_symmetric_tail()
        return self.gamma_z1 / self.gamma_z2

    @property
    def tail_limit_scale(self) -> float:
        """Constant d in the joint tail limit c(x, y) = d*(min(x, y))**(1/eta).

        With S_X(x) ~ C*x**(-1/gamma1) and joint tail w*P(Z1 > max(u, v)),
        substituting the tail quantiles gives d = w * C**(-1/eta):
        example1 has w = C = 1; example2 has w = bernoulli_p and
        C = 1 - bernoulli_p (the Z2 branch carries the heavy margin),
        so d = 2**(1/3) at the default weight 1/2.
        """
        self._require_symmetric_tail()
        if self.variant == "example1":
            return 1.0
        w = self.bernoulli_p
        return w * (1.0 - w) ** (-1.0 / self.eta)


EXAMPLE1 = ModelSpec("example1")
EXAMPLE2 = ModelSpec("example2")


def model_by_name(name: str) -> ModelSpec:
    if name not in VARIANTS:
        raise ArgumentError(f"unknown model {name!r}, expected one of {VARIANTS}")
    return EXAMPLE1 if name == "example1" else EXAMPLE2


def sample_pareto(gamma: float, u) -> np.ndarray | float:
    """Inverse-transform Pareto deviate (1-u)**(-gamma), support [1, inf)."""
    if gamma <= 0:
        raise ArgumentError(f"gamma must be > 0, got {gamma}")
    u_arr = np.asarray(u, dtype=float)
    if np.any(u_arr <= 0.0) or np.any(u_arr >= 1.0):
        raise ArgumentError("u must lie strictly inside (0, 1)")
    out = (1.0 - u_arr) ** (-gamma)
    return float(out) if np.isscalar(u) else out


def replicate_rng(master_seed: int, index: int) -> np.random.Generator:
    """Independent per-replicate generator keyed by (master_seed, index).

    Uses SeedSequence spawn keys, so replicate streams are reproducible
    regardless of execution order and of how many replicates run.
    """
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(ss))


def _as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def sample_model(spec: ModelSpec, n: int, seed) -> PairedSample:
    """Draw n pairs from the given model, deterministically in the seed.

    seed may be an int, a SeedSequence, or a Generator (consumed).
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ArgumentError(f"n must be a positive integer, got {n!r}")
    rng = _as_generator(seed)
    gammas = np.array([spec.gamma_z1, spec.gamma_z2, spec.gamma_z3])
    if spec.variant == "example1":
        u = rng.random((n, 3))
        z = (1.0 - u) ** (-gammas)
        x = np.maximum(z[:, 0], z[:, 1])
        y = np.maximum(z[:, 0], z[:, 2])
    else:
        u = rng.random((n, 4))
        z = (1.0 - u[:, :3]) ** (-gammas)
        joint = u[:, 3] < spec.bernoulli_p
        x = np.where(joint, z[:, 0], z[:, 1])
        y = np.where(joint, z[:, 0], z[:, 2])
    return PairedSample(x=x, y=y)
