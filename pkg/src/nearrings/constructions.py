"""Closed-form local nearring tables on the order-p^4 catalog groups.

Each builder evaluates one published multiplication family at an odd prime
and returns the resulting Nearring.  Binomial coefficients are computed
over the integers and reduced modulo the coordinate order at the end, so
the formulas stay valid verbatim for every supported p.
"""

import numpy as np

from .nearring import Nearring, StructureMaps, g4_table_from_maps, g5_table_from_maps
from .pgroup import GroupSpec, catalog, element_array

# exhaustive table builds are kept at desk scale (order <= 7^4 = 2401)
DESK_PRIMES = (3, 5, 7)

CONSTRUCTION_IDS = (
    "g3-metacyclic",
    "g1-k1",
    "g1-k2",
    "g4-pow-i",
    "g4-const",
    "g5-ind",
    "g5-const",
)


def _require_desk_prime(p):
    if p not in DESK_PRIMES:
        raise ValueError(f"table builds support p in {DESK_PRIMES}, got {p!r}")


def _binom2(a):
    return a * (a - 1) // 2


def build_g3_metacyclic(p: int) -> Nearring:
    """Zero-symmetric local multiplication on the metacyclic group (p^3, p).

    x*y = a(x1 y1 + p^2 x1 x2 C(y1,2)) + b(x2 y1 + beta(x) y2), where
    beta(x) = 1 iff x1 is a unit mod p.  The a-coefficient is mod p^3.
    """
    _require_desk_prime(p)
    g = catalog("G3", p)
    E = element_array(g)
    x1, x2 = E[:, 0][:, None], E[:, 1][:, None]
    y1, y2 = E[:, 0][None, :], E[:, 1][None, :]
    beta = (x1 % p != 0).astype(np.int64)
    A = x1 * y1 + p * p * x1 * x2 * _binom2(y1)
    B = x2 * y1 + beta * y2
    st = g.strides()
    mul = (A % p**3) * st[0] + (B % p) * st[1]
    return Nearring.from_mul_table(g, mul)


def build_g1(p: int, k: int = 1, zero_sym_variant: bool = False) -> Nearring:
    """Local multiplication on the non-metacyclic group (p^2, p, p).

    x*y = a(x1 y1 + p^k x2 y2) + b(x2 y1 + x1 y2)
        + c(-x1 x2 C(y1,2) + x3 y1 + x1^2 y3)
    with the a-coefficient mod p^2 and the rest mod p.  `zero_sym_variant`
    drops the p^k x2 y2 term entirely; at any p the k=2 build coincides
    with it because p^2 = 0 in the a-coordinate.
    """
    _require_desk_prime(p)
    if k not in (1, 2):
        raise ValueError(f"k must be 1 or 2, got {k!r}")
    g = catalog("G1", p)
    E = element_array(g)
    x1, x2, x3 = (E[:, i][:, None] for i in range(3))
    y1, y2, y3 = (E[:, i][None, :] for i in range(3))
    A = x1 * y1
    if not zero_sym_variant:
        A = A + p**k * x2 * y2
    B = x2 * y1 + x1 * y2
    C = -x1 * x2 * _binom2(y1) + x3 * y1 + x1 * x1 * y3
    st = g.strides()
    mul = (A % p**2) * st[0] + (B % p) * st[1] + (C % p) * st[2]
    return Nearring.from_mul_table(g, mul)


def _g4_maps(g: GroupSpec, beta: np.ndarray) -> StructureMaps:
    zeros = np.zeros(g.order, dtype=np.int64)
    return StructureMaps(kind="G4", prime=g.prime, alpha=zeros, beta=beta,
                         gamma=zeros, mu=zeros, nu=zeros, phi=zeros,
                         lam=zeros, psi=beta)


def build_g4(p: int, family: str) -> Nearring:
    """Local multiplication on the elementary-abelian-by-relations group (p,p,p,p).

    Families: "pow-<i>" sets beta(x) = psi(x) = x1^i for 0 < i < p;
    "const" sets beta = psi = 1.  The remaining six maps are zero.
    """
    _require_desk_prime(p)
    g = catalog("G4", p)
    x1 = element_array(g)[:, 0]
    if family == "const":
        beta = np.ones(g.order, dtype=np.int64)
    elif family.startswith("pow-"):
        i = int(family[4:])
        if not 0 < i < p:
            raise ValueError(f"power exponent must satisfy 0 < i < p, got {i}")
        beta = (x1**i) % p
    else:
        raise ValueError(f"unknown G4 family {family!r}")
    sm = _g4_maps(g, beta)
    return Nearring.from_mul_table(g, g4_table_from_maps(g, sm))


def build_g5(p: int, family: str) -> Nearring:
    """Local multiplication on the (p^2, p, p) group with central last generator.

    Families: "ind" sets beta(x) = phi(x) = 1 iff x1 is a unit mod p;
    "const" sets beta = phi = 1.  alpha, gamma, mu, nu are zero.
    """
    _require_desk_prime(p)
    g = catalog("G5", p)
    x1 = element_array(g)[:, 0]
    zeros = np.zeros(g.order, dtype=np.int64)
    if family == "ind":
        beta = (x1 % p != 0).astype(np.int64)
    elif family == "const":
        beta = np.ones(g.order, dtype=np.int64)
    else:
        raise ValueError(f"unknown G5 family {family!r}")
    sm = StructureMaps(kind="G5", prime=p, alpha=zeros, beta=beta, gamma=zeros,
                       mu=zeros, nu=zeros, phi=beta)
    return Nearring.from_mul_table(g, g5_table_from_maps(g, sm))


def build_by_id(ident: str, p: int, i: int | None = None) -> Nearring:
    """Build a table by CLI identifier; `i` is required only for g4-pow-i."""
    if ident == "g3-metacyclic":
        return build_g3_metacyclic(p)
    if ident == "g1-k1":
        return build_g1(p, k=1)
    if ident == "g1-k2":
        return build_g1(p, k=2)
    if ident == "g4-pow-i":
        if i is None:
            raise ValueError("g4-pow-i needs the power exponent i")
        return build_g4(p, f"pow-{i}")
    if ident == "g4-const":
        return build_g4(p, "const")
    if ident == "g5-ind":
        return build_g5(p, "ind")
    if ident == "g5-const":
        return build_g5(p, "const")
    raise ValueError(f"unknown construction {ident!r}")


def all_builds(p: int) -> dict:
    """Every family instance at p, keyed by a reproducible name."""
    out = {"g3-metacyclic": build_g3_metacyclic(p),
           "g1-k1": build_g1(p, 1), "g1-k2": build_g1(p, 2)}
    for i in range(1, p):
        out[f"g4-pow-{i}"] = build_g4(p, f"pow-{i}")
    out["g4-const"] = build_g4(p, "const")
    out["g5-ind"] = build_g5(p, "ind")
    out["g5-const"] = build_g5(p, "const")
    return out
