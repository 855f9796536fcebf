"""Normal-form arithmetic on finite class-2 p-groups.

A group is presented by an ordered generator list g0 < g1 < ... with
relative orders n_i, central commutator words comm(g_i, g_j) = -g_i-g_j+g_i+g_j
for every pair i < j, and optional central power words g_i * n_i.  Every
element has a unique normal form: a coefficient vector (x_0, ..., x_{m-1})
with 0 <= x_i < n_i, read as g_0*x_0 + g_1*x_1 + ... in that order.

Addition is generic left-to-right collection driven by the relation table;
the per-group closed forms are test oracles, not the implementation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

Element = tuple  # coefficient vector in normal form

DENSE_CAP = 10_000  # largest order for which dense tables are built

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


class MalformedElementError(ValueError):
    """Coefficient vector out of bounds or of the wrong length."""


class CatalogError(ValueError):
    """Unknown catalog name or invalid prime for it."""


@dataclass(frozen=True)
class GroupSpec:
    """Presentation of a finite class-2 group in normal-form coordinates.

    relation_table holds one coefficient vector per ordered pair (j, i) with
    j > i, in the fixed order (1,0), (2,0), (2,1), (3,0), (3,1), (3,2), ...;
    entry (j, i) is the normal form of -g_i - g_j + g_i + g_j.  power_words
    holds one coefficient vector per generator: the normal form of g_i * n_i
    (all-zero when the power collapses to the identity, as it usually does).
    """

    name: str
    prime: int
    gen_orders: tuple
    relation_table: tuple
    power_words: tuple = None  # type: ignore[assignment]

    def __post_init__(self):
        m = len(self.gen_orders)
        object.__setattr__(self, "gen_orders", tuple(int(v) for v in self.gen_orders))
        if self.power_words is None:
            object.__setattr__(self, "power_words", tuple((0,) * m for _ in range(m)))
        object.__setattr__(
            self, "relation_table", tuple(tuple(int(v) for v in w) for w in self.relation_table)
        )
        object.__setattr__(
            self, "power_words", tuple(tuple(int(v) for v in w) for w in self.power_words)
        )
        if len(self.relation_table) != m * (m - 1) // 2:
            raise ValueError("relation_table must have one word per generator pair (j>i)")
        if len(self.power_words) != m:
            raise ValueError("power_words must have one word per generator")
        if any(n < 1 for n in self.gen_orders):
            raise ValueError("generator orders must be positive")
        for w in self.relation_table + self.power_words:
            if len(w) != m:
                raise ValueError("relation words must be coefficient vectors of full length")
        # The integer carry vector used by collection is exact only when every
        # central correction word is a power of a single generator; a power
        # word must also sit strictly left of the generator it reduces, so a
        # single downward reduction pass terminates.
        for (j, i), w in zip(self._pairs(), self.relation_table):
            if sum(1 for v in w if v) > 1:
                raise ValueError(f"commutator word for pair ({j},{i}) spans several generators")
        for i, w in enumerate(self.power_words):
            support = [s for s, v in enumerate(w) if v]
            if len(support) > 1 or (support and support[0] >= i):
                raise ValueError(f"power word of generator {i} must be a single lower generator power")
        # Correction words must be central (class 2), or the carry treatment
        # is unsound.  A word g_s*v commutes with g_t iff v times the (s, t)
        # commutator word vanishes.
        for w in self.relation_table + self.power_words:
            sw = _sparse_word(w)
            if sw is None:
                continue
            s, v = sw
            for t in range(m):
                if t == s:
                    continue
                cw = _sparse_word(self.relation_table[max(s, t) * (max(s, t) - 1) // 2 + min(s, t)])
                if cw is not None and (v * cw[1]) % self.gen_orders[cw[0]] != 0:
                    raise ValueError(f"correction word on generator {s} is not central")

    def _pairs(self):
        m = len(self.gen_orders)
        return [(j, i) for j in range(1, m) for i in range(j)]

    @property
    def ngens(self) -> int:
        return len(self.gen_orders)

    @property
    def order(self) -> int:
        n = 1
        for v in self.gen_orders:
            n *= v
        return n

    def relation_word(self, j: int, i: int) -> tuple:
        """Normal form of -g_i - g_j + g_i + g_j for j > i."""
        assert j > i
        return self.relation_table[j * (j - 1) // 2 + i]

    def strides(self) -> tuple:
        m = self.ngens
        st = [1] * m
        for s in range(m - 2, -1, -1):
            st[s] = st[s + 1] * self.gen_orders[s + 1]
        return tuple(st)

    def index_of(self, x: Sequence) -> int:
        """Lexicographic rank of the coefficient vector (leftmost most significant)."""
        validate_element(self, x)
        r = 0
        for v, s in zip(x, self.strides()):
            r += v * s
        return r

    def element_at(self, rank: int) -> Element:
        if not 0 <= rank < self.order:
            raise MalformedElementError(f"rank {rank} out of range for group of order {self.order}")
        out = []
        for s in self.strides():
            out.append(rank // s)
            rank %= s
        return tuple(out)

    def elements(self) -> list:
        return [self.element_at(r) for r in range(self.order)]

    def zero(self) -> Element:
        return (0,) * self.ngens

    def generator(self, i: int) -> Element:
        x = [0] * self.ngens
        x[i] = 1
        return tuple(x)

    def to_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "prime": self.prime,
                "gen_orders": list(self.gen_orders),
                "relation_table": [list(w) for w in self.relation_table],
                "power_words": [list(w) for w in self.power_words],
            },
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "GroupSpec":
        d = json.loads(text)
        return GroupSpec(
            name=d["name"],
            prime=int(d["prime"]),
            gen_orders=tuple(d["gen_orders"]),
            relation_table=tuple(tuple(w) for w in d["relation_table"]),
            power_words=tuple(tuple(w) for w in d.get("power_words", [])) or None,
        )


def validate_element(g: GroupSpec, x: Sequence) -> None:
    if len(x) != g.ngens:
        raise MalformedElementError(f"expected {g.ngens} coefficients, got {len(x)}")
    for v, n in zip(x, g.gen_orders):
        if not 0 <= v < n:
            raise MalformedElementError(f"coefficient {v} out of range [0, {n})")


def _sparse_word(w: Sequence):
    """(coordinate, value) of a single-generator word, or None for the zero word."""
    for s, v in enumerate(w):
        if v:
            return s, v
    return None


def _reduce(g: GroupSpec, acc: list, carry: list) -> Element:
    """Reduce an unbounded coefficient vector plus a central integer carry.

    Processes coordinates right to left; overflow of coordinate s feeds the
    (strictly lower) power word of g_s back into the carry, so one pass is
    enough.
    """
    for s in range(g.ngens - 1, -1, -1):
        total = acc[s] + carry[s]
        q, r = divmod(total, g.gen_orders[s])
        acc[s] = r
        if q:
            pw = _sparse_word(g.power_words[s])
            if pw is not None:
                carry[pw[0]] += q * pw[1]
    return tuple(acc)


def add(g: GroupSpec, x: Sequence, y: Sequence) -> Element:
    """Sum x + y in normal form by left-to-right collection.

    Moving the block g_t*y_t of y past the tail block g_j*x_j of x (j > t)
    deposits the central correction -(y_t * x_j) * comm(g_t, g_j); all
    corrections are central, so they accumulate in an integer carry applied
    at the final reduction.
    """
    validate_element(g, x)
    validate_element(g, y)
    m = g.ngens
    acc = [x[t] + y[t] for t in range(m)]
    carry = [0] * m
    for t in range(m - 1):
        yt = y[t]
        if not yt:
            continue
        for j in range(t + 1, m):
            if not x[j]:
                continue
            w = _sparse_word(g.relation_word(j, t))
            if w is not None:
                carry[w[0]] -= yt * x[j] * w[1]
    return _reduce(g, acc, carry)


def neg(g: GroupSpec, x: Sequence) -> Element:
    """Additive inverse: collect g_{m-1}*(-x_{m-1}) + ... + g_0*(-x_0)."""
    validate_element(g, x)
    m = g.ngens
    acc = [-v for v in x]
    carry = [0] * m
    for t in range(m - 1):
        if not x[t]:
            continue
        for j in range(t + 1, m):
            if not x[j]:
                continue
            w = _sparse_word(g.relation_word(j, t))
            if w is not None:
                carry[w[0]] -= x[t] * x[j] * w[1]
    return _reduce(g, acc, carry)


def scalar_mul(g: GroupSpec, x: Sequence, r: int) -> Element:
    """x added to itself r times (binary doubling); negative r goes through neg."""
    if r < 0:
        return scalar_mul(g, neg(g, x), -r)
    validate_element(g, x)
    result = g.zero()
    base = tuple(x)
    while r:
        if r & 1:
            result = add(g, result, base)
        base = add(g, base, base)
        r >>= 1
    return result


def element_order(g: GroupSpec, x: Sequence) -> int:
    """Smallest r >= 1 with x*r = 0."""
    validate_element(g, x)
    zero = g.zero()
    acc = tuple(x)
    r = 1
    while acc != zero:
        acc = add(g, acc, x)
        r += 1
    return r


def commutator(g: GroupSpec, x: Sequence, y: Sequence) -> Element:
    """-x - y + x + y in normal form."""
    return add(g, add(g, add(g, neg(g, x), neg(g, y)), x), y)


def conjugate(g: GroupSpec, x: Sequence, y: Sequence) -> Element:
    """-y + x + y in normal form."""
    return add(g, add(g, neg(g, y), x), y)


# ---------------------------------------------------------------------------
# Dense tables.  GroupSpec is immutable and hashable, so these are cached.

def _check_dense(g: GroupSpec) -> None:
    if g.order > DENSE_CAP:
        raise ValueError(f"group of order {g.order} exceeds the dense-table cap {DENSE_CAP}")


@lru_cache(maxsize=None)
def element_array(g: GroupSpec) -> np.ndarray:
    """All coefficient vectors in rank order, shape (n, m)."""
    _check_dense(g)
    st = g.strides()
    ranks = np.arange(g.order)
    cols = [(ranks // st[s]) % g.gen_orders[s] for s in range(g.ngens)]
    return np.stack(cols, axis=1).astype(np.int64)


@lru_cache(maxsize=None)
def add_table(g: GroupSpec) -> np.ndarray:
    """Dense n x n table of element indices: table[i, j] = rank(x_i + x_j)."""
    _check_dense(g)
    E = element_array(g)
    n, m = E.shape
    st = np.array(g.strides(), dtype=np.int64)
    orders = np.array(g.gen_orders, dtype=np.int64)
    sparse_rel = {
        (j, i): _sparse_word(g.relation_word(j, i))
        for j in range(1, m)
        for i in range(j)
    }
    sparse_pow = [_sparse_word(w) for w in g.power_words]
    table = np.empty((n, n), dtype=np.int16 if n < 2 ** 15 else np.int32)
    for i in range(n):
        x = E[i]
        acc = E + x[None, :]  # (n, m): row y -> coefficients of x + y
        carry = np.zeros((n, m), dtype=np.int64)
        for t in range(m - 1):
            for j in range(t + 1, m):
                if not x[j]:
                    continue
                w = sparse_rel[(j, t)]
                if w is not None:
                    carry[:, w[0]] -= E[:, t] * (x[j] * w[1])
        for s in range(m - 1, -1, -1):
            total = acc[:, s] + carry[:, s]
            q = total // orders[s]
            acc[:, s] = total - q * orders[s]
            pw = sparse_pow[s]
            if pw is not None:
                carry[:, pw[0]] += q * pw[1]
        table[i] = (acc * st[None, :]).sum(axis=1)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def neg_table(g: GroupSpec) -> np.ndarray:
    _check_dense(g)
    out = np.array([g.index_of(neg(g, x)) for x in g.elements()], dtype=np.int32)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def order_table(g: GroupSpec) -> np.ndarray:
    """Additive order of every element, computed by iterated table lookups."""
    _check_dense(g)
    T = add_table(g)
    n = T.shape[0]
    out = np.ones(n, dtype=np.int32)
    acc = np.arange(n)
    alive = acc != 0
    while alive.any():
        acc = np.where(alive, T[acc, np.arange(n)], acc)
        out[alive] += 1
        alive = alive & (acc != 0)
    return out


def exponent(g: GroupSpec) -> int:
    """Maximal additive order over all elements."""
    return int(order_table(g).max())


def subgroup_closure(g: GroupSpec, gens: Iterable) -> list:
    """Smallest subset containing gens closed under add and neg, as sorted indices.

    Accepts coefficient vectors or element indices.  In a finite group closure
    under addition alone already yields a subgroup; neg comes for free.
    """
    _check_dense(g)
    T = add_table(g)
    idx = set()
    for x in gens:
        idx.add(int(x) if isinstance(x, (int, np.integer)) else g.index_of(x))
    idx.add(0)
    cur = np.array(sorted(idx), dtype=np.int64)
    while True:
        sums = np.unique(T[cur[:, None], cur[None, :]])
        merged = np.union1d(cur, sums)
        if merged.size == cur.size:
            return [int(v) for v in merged]
        cur = merged


@lru_cache(maxsize=None)
def derived_subgroup(g: GroupSpec) -> tuple:
    """Sorted indices of the subgroup generated by all commutators."""
    words = [w for w in g.relation_table if any(w)]
    return tuple(subgroup_closure(g, words))


@lru_cache(maxsize=None)
def center(g: GroupSpec) -> tuple:
    """Sorted indices of elements commuting with every generator."""
    _check_dense(g)
    T = add_table(g)
    n = T.shape[0]
    mask = np.ones(n, dtype=bool)
    for i in range(g.ngens):
        gi = g.index_of(g.generator(i))
        mask &= T[np.arange(n), gi] == T[gi, np.arange(n)]
    return tuple(int(v) for v in np.flatnonzero(mask))


# ---------------------------------------------------------------------------
# Homomorphism plumbing shared by the search and isomorphism testing.

def hom_respects_relations(g: GroupSpec, h: GroupSpec, images: Sequence) -> bool:
    """True iff mapping g's generators to `images` (elements of h) extends to a
    homomorphism: every power word and commutator relation must be preserved."""
    if len(images) != g.ngens:
        raise ValueError("one image per generator required")

    def word_image(w):
        out = h.zero()
        for s, v in enumerate(w):
            if v:
                out = add(h, out, scalar_mul(h, images[s], v))
        return out

    for i in range(g.ngens):
        if scalar_mul(h, images[i], g.gen_orders[i]) != word_image(g.power_words[i]):
            return False
    for j in range(1, g.ngens):
        for i in range(j):
            if commutator(h, images[i], images[j]) != word_image(g.relation_word(j, i)):
                return False
    return True


def hom_extend(g: GroupSpec, h: GroupSpec, images: Sequence) -> np.ndarray:
    """Value table of the extension x -> sum images[s]*x_s, as h-indices (length |g|).

    Only well defined as a homomorphism when hom_respects_relations holds;
    this just evaluates the ordered sum for every normal form of g, reusing
    the value at the rank with the last nonzero coefficient stripped.
    """
    _check_dense(g)
    _check_dense(h)
    Th = add_table(h)
    img_idx = [h.index_of(im) for im in images]
    # powers[s][k] = h-index of images[s]*k
    powers = []
    for s in range(g.ngens):
        row = [0]
        for _ in range(1, g.gen_orders[s]):
            row.append(int(Th[row[-1], img_idx[s]]))
        powers.append(row)
    n = g.order
    st = g.strides()
    out = np.zeros(n, dtype=np.int32)
    for rank in range(1, n):
        for s in range(g.ngens - 1, -1, -1):
            k = (rank // st[s]) % g.gen_orders[s]
            if k:
                prefix = rank - k * st[s]
                out[rank] = Th[out[prefix], powers[s][k]]
                break
    return out


# ---------------------------------------------------------------------------
# Catalog

def _is_prime(p: int) -> bool:
    return p in _SMALL_PRIMES


def _zero_words(m: int) -> list:
    return [(0,) * m for _ in range(m * (m - 1) // 2)]


def _with_pair(words: list, m: int, j: int, i: int, w: tuple) -> tuple:
    words = list(words)
    words[j * (j - 1) // 2 + i] = w
    return tuple(words)


def catalog(name: str, p: int = None) -> GroupSpec:
    """Catalog of the concrete groups used throughout: G1..G6 for odd primes,
    the six class-2 groups of order 16, and calibration groups."""
    odd = {"G1", "G2", "G3", "G4", "G5", "G6"}
    two = {"16-3", "16-4", "16-6", "16-11", "16-12", "16-13", "D8", "Q8"}
    calib = {"Cp2_cyclic", "Cp2_elem_abelian"}
    if name in odd:
        if p is None:
            raise CatalogError(f"{name} requires a prime")
        if not _is_prime(p) or p == 2:
            raise CatalogError(f"{name} requires an odd prime, got {p}")
    elif name in two:
        if p is None:
            p = 2
        if p != 2:
            raise CatalogError(f"{name} is a 2-group; p must be 2")
    elif name in calib:
        if p is None or not _is_prime(p):
            raise CatalogError(f"{name} requires a small prime, got {p}")
    else:
        raise CatalogError(f"unknown group {name!r}")

    if name == "G1":
        # gens a, b, c with c = -a-b+a+b central of order p
        rel = _with_pair(_zero_words(3), 3, 1, 0, (0, 0, 1))
        return GroupSpec(name, p, (p * p, p, p), rel)
    if name == "G2":
        # -a-b+a+b = b*(p^2-p)
        rel = _with_pair(_zero_words(2), 2, 1, 0, (0, p * p - p))
        return GroupSpec(name, p, (p * p, p * p), rel)
    if name == "G3":
        # -a-b+a+b = a*(p^3-p^2)
        rel = _with_pair(_zero_words(2), 2, 1, 0, (p ** 3 - p * p, 0))
        return GroupSpec(name, p, (p ** 3, p), rel)
    if name == "G4":
        rel = _with_pair(_zero_words(4), 4, 1, 0, (0, 0, 1, 0))
        return GroupSpec(name, p, (p, p, p, p), rel)
    if name == "G5":
        # a+b = b+a(1-p), c central
        rel = _with_pair(_zero_words(3), 3, 1, 0, (p * p - p, 0, 0))
        return GroupSpec(name, p, (p * p, p, p), rel)
    if name == "G6":
        # a central, c+b = b+c+a*p
        rel = _with_pair(_zero_words(3), 3, 2, 1, (p * p - p, 0, 0))
        return GroupSpec(name, p, (p * p, p, p), rel)
    if name == "16-3":
        # b = -a-c+a+c central of order 2
        rel = _with_pair(_zero_words(3), 3, 2, 0, (0, 1, 0))
        return GroupSpec(name, 2, (4, 2, 2), rel)
    if name == "16-4":
        rel = _with_pair(_zero_words(2), 2, 1, 0, (2, 0))
        return GroupSpec(name, 2, (4, 4), rel)
    if name == "16-6":
        rel = _with_pair(_zero_words(2), 2, 1, 0, (4, 0))
        return GroupSpec(name, 2, (8, 2), rel)
    if name == "16-11":
        rel = _with_pair(_zero_words(3), 3, 1, 0, (2, 0, 0))
        return GroupSpec(name, 2, (4, 2, 2), rel)
    if name == "16-12":
        rel = _with_pair(_zero_words(3), 3, 1, 0, (2, 0, 0))
        pw = ((0, 0, 0), (2, 0, 0), (0, 0, 0))
        return GroupSpec(name, 2, (4, 2, 2), rel, pw)
    if name == "16-13":
        # a central of order 4; -b-c+b+c = a^2
        rel = _with_pair(_zero_words(3), 3, 2, 1, (2, 0, 0))
        return GroupSpec(name, 2, (4, 2, 2), rel)
    if name == "D8":
        rel = _with_pair(_zero_words(2), 2, 1, 0, (2, 0))
        return GroupSpec(name, 2, (4, 2), rel)
    if name == "Q8":
        rel = _with_pair(_zero_words(2), 2, 1, 0, (2, 0))
        return GroupSpec(name, 2, (4, 2), rel, ((0, 0), (2, 0)))
    if name == "Cp2_cyclic":
        return GroupSpec(name, p, (p * p,), ())
    if name == "Cp2_elem_abelian":
        return GroupSpec(name, p, (p, p), _zero_words(2))
    raise CatalogError(f"unknown group {name!r}")  # pragma: no cover


CATALOG_ODD = ("G1", "G2", "G3", "G4", "G5", "G6")
CATALOG_TWO = ("16-3", "16-4", "16-6", "16-11", "16-12", "16-13", "D8", "Q8")
CATALOG_CALIB = ("Cp2_cyclic", "Cp2_elem_abelian")
