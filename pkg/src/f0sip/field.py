"""Exact arithmetic in prime fields F_q and extensions F_{q^lambda}.

Elements of the extension are stored as fixed-length coordinate vectors in
the polynomial basis (ascending degree) modulo a canonical irreducible
polynomial.  The canonical modulus is the lexicographically smallest monic
irreducible of the requested degree, so two parties that agree on (q, lambda)
agree on the whole field without exchanging anything.

Besides the scalar element type, the context exposes vectorized coordinate
arithmetic on numpy arrays of shape (..., lambda); the protocol's hot paths
(prover round polynomials, verifier stream updates) run on those.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeModulus:
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"{self.q} is not prime")


# ---------------------------------------------------------------------------
# Polynomials over F_q as int tuples (ascending degree), used only for the
# irreducible-modulus search.
# ---------------------------------------------------------------------------

def _poly_divmod(num: list[int], den: list[int], q: int) -> tuple[list[int], list[int]]:
    num = list(num)
    dn = len(den) - 1
    inv_lead = pow(den[-1], q - 2, q)
    quot = [0] * max(len(num) - dn, 0)
    for i in range(len(num) - 1, dn - 1, -1):
        c = (num[i] * inv_lead) % q
        if c:
            quot[i - dn] = c
            for j, d in enumerate(den):
                num[i - dn + j] = (num[i - dn + j] - c * d) % q
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _divides(den: list[int], num: list[int], q: int) -> bool:
    _, rem = _poly_divmod(num, den, q)
    return len(rem) == 1 and rem[0] == 0


def _monic_polys(q: int, deg: int):
    # ascending-coefficient-tuple order: low coefficients vary slowest
    for idx in range(q ** deg):
        coeffs = []
        v = idx
        for _ in range(deg):
            coeffs.append(v % q)
            v //= q
        # idx digits are little-endian in the loop above; we want the tuple
        # (c_0, ..., c_{deg-1}) to increase lexicographically, so emit with
        # c_0 as the most significant digit of idx instead.
        yield coeffs


def _monic_polys_lex(q: int, deg: int):
    for idx in range(q ** deg):
        coeffs = [0] * deg
        v = idx
        for pos in range(deg):  # c_0 most significant
            coeffs[pos] = v // q ** (deg - 1 - pos)
            v %= q ** (deg - 1 - pos)
        yield coeffs + [1]


def _is_irreducible(poly: list[int], q: int) -> bool:
    deg = len(poly) - 1
    if deg == 1:
        return True
    for k in range(1, deg // 2 + 1):
        for low in _monic_polys(q, k):
            den = low + [1]
            if _divides(den, poly, q):
                return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(q: int, lam: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree lam over F_q."""
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    for cand in _monic_polys_lex(q, lam):
        if _is_irreducible(cand, q):
            return tuple(cand)
    raise AssertionError("unreachable: irreducibles of every degree exist")


# ---------------------------------------------------------------------------
# Extension field context
# ---------------------------------------------------------------------------

class ExtFieldCtx:
    """F_{q^lambda} with the canonical modulus; shared, immutable."""

    def __init__(self, q: int, lam: int, modulus_poly: tuple[int, ...] | None = None):
        if not is_prime(q):
            raise ValueError(f"{q} is not prime")
        if lam < 1:
            raise ValueError("lambda must be >= 1")
        if modulus_poly is None:
            modulus_poly = find_irreducible(q, lam)
        modulus_poly = tuple(int(c) % q for c in modulus_poly)
        if len(modulus_poly) != lam + 1 or modulus_poly[-1] != 1:
            raise ValueError("modulus must be monic of degree lambda")
        if not _is_irreducible(list(modulus_poly), q):
            raise ValueError("modulus is reducible")
        self.q = q
        self.lam = lam
        self.modulus_poly = modulus_poly
        self.order = q ** lam
        self.red = self._reduction_matrix()
        # v -> v^(q-1) mod q lookup, used by the OR-polynomial evaluations
        self.pow_q1 = np.array([pow(v, q - 1, q) for v in range(q)], dtype=np.int64)
        self.qpows = self.q ** np.arange(lam, dtype=np.int64)
        self._exptab: np.ndarray | None = None
        self._logtab: np.ndarray | None = None
        self._zech: np.ndarray | None = None
        self._or_step: np.ndarray | None = None

    def _reduction_matrix(self) -> np.ndarray:
        """Rows s = coords of x^(lam+s) mod modulus, s = 0..lam-2."""
        q, lam = self.q, self.lam
        rows = []
        cur = [(-c) % q for c in self.modulus_poly[:lam]]  # x^lam
        rows.append(list(cur))
        for _ in range(lam - 2):
            nxt = [0] + cur[:-1]
            lead = cur[-1]
            for j in range(lam):
                nxt[j] = (nxt[j] + lead * rows[0][j]) % q
            cur = nxt
            rows.append(list(cur))
        if lam == 1:
            return np.zeros((0, 1), dtype=np.int64)
        return np.array(rows, dtype=np.int64)

    # -- element factories ---------------------------------------------------

    def zero(self) -> "ExtFieldElement":
        return ExtFieldElement(self, (0,) * self.lam)

    def one(self) -> "ExtFieldElement":
        return ExtFieldElement(self, (1,) + (0,) * (self.lam - 1))

    def element(self, coords) -> "ExtFieldElement":
        return ExtFieldElement(self, tuple(int(c) % self.q for c in coords))

    def from_int(self, v: int) -> "ExtFieldElement":
        """Canonical embedding of 0 <= v < q^lambda via base-q digits."""
        if not 0 <= v < self.order:
            raise ValueError("integer out of field range")
        return self.element(self.embed_ints(np.array([v]))[0])

    def embed_ints(self, vs: np.ndarray) -> np.ndarray:
        """Base-q digit coordinates for an array of integers, shape (..., lam)."""
        vs = np.asarray(vs, dtype=np.int64)
        out = np.empty(vs.shape + (self.lam,), dtype=np.int64)
        rest = vs.copy()
        for t in range(self.lam):
            out[..., t] = rest % self.q
            rest //= self.q
        return out

    def pack_coords(self, coords: np.ndarray) -> np.ndarray:
        """Inverse of embed_ints: coordinate vectors to base-q packed integers."""
        return np.asarray(coords, dtype=np.int64) @ self.qpows

    # -- discrete-log tables ---------------------------------------------------
    #
    # For moderate field sizes the whole multiplicative group fits in memory,
    # turning extension multiplications and fixed-exponent powers in the
    # prover's hot loop into integer adds plus table lookups.

    _TABLE_CAP = 1 << 26  # largest q^lambda for which tables are built

    def _find_generator(self) -> "ExtFieldElement":
        n = self.order - 1
        factors = _prime_factors(n)
        one = self.one()
        for cand in range(2, self.order):
            el = self.from_int(cand)
            if all(el ** (n // p) != one for p in factors):
                return el
        raise AssertionError("unreachable: the multiplicative group is cyclic")

    def dlog_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(exp, log): exp[e] = packed(g^e) for e < q^lam - 1; log inverts it,
        with log[0] = -1 as a sentinel for the zero element."""
        if self._exptab is None:
            if self.order > self._TABLE_CAP:
                raise ValueError(f"q^lambda = {self.order} too large for dlog tables")
            n = self.order - 1
            gen = self._find_generator().as_array()
            exptab = np.empty(n, dtype=np.int64)
            exptab[0] = 1
            filled = 1
            gpow = gen  # coordinates of g^filled
            chunk = 1 << 20
            while filled < n:
                take = min(filled, n - filled)
                for s in range(0, take, chunk):
                    blk = self.embed_ints(exptab[s:min(s + chunk, take)])
                    prod = self.vec_mul(blk, gpow[None, :])
                    exptab[filled + s: filled + s + blk.shape[0]] = self.pack_coords(prod)
                filled += take
                gpow = self.vec_mul(gpow, gpow)
            logtab = np.full(self.order, -1, dtype=np.int64)
            logtab[exptab] = np.arange(n, dtype=np.int64)
            self._exptab, self._logtab = exptab, logtab
        return self._exptab, self._logtab

    def zech_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(zech, or_step), both indexed by a discrete log k and sentinel -1.

        zech[k] = log(1 + g^k), the Zech logarithm, so field additions can be
        carried out entirely in the log domain; or_step[k] = log(1 - (g^k)^(q-1)),
        one factor of the OR polynomial.  A -1 entry means the value is zero.
        """
        if self._zech is None:
            exptab, logtab = self.dlog_tables()
            n = self.order - 1
            q = self.q
            # adding one only touches the degree-0 digit of the packed value
            d0 = exptab % q
            inc = np.where(d0 == q - 1, exptab - (q - 1), exptab + 1)
            zech = np.where(inc == 0, np.int64(-1), logtab[inc])
            log_neg1 = int(logtab[q - 1])  # packed(-1) is the scalar q-1
            ks = np.arange(n, dtype=np.int64)
            or_step = zech[(ks * (q - 1) + log_neg1) % n]
            self._zech, self._or_step = zech, or_step
        return self._zech, self._or_step

    # -- vectorized coordinate arithmetic -------------------------------------

    def vec_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        lam = self.lam
        if lam == 1:
            return (a * b) % self.q
        a, b = np.broadcast_arrays(a, b)
        conv = np.zeros(a.shape[:-1] + (2 * lam - 1,), dtype=np.int64)
        for i in range(lam):
            conv[..., i:i + lam] += a[..., i:i + 1] * b
        conv %= self.q
        low = conv[..., :lam]
        return (low + conv[..., lam:] @ self.red) % self.q

    def vec_pow(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        result = np.zeros_like(a)
        result[..., 0] = 1
        base = a % self.q
        while e:
            if e & 1:
                result = self.vec_mul(result, base)
            base = self.vec_mul(base, base)
            e >>= 1
        return result

    def vec_inv(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64) % self.q
        if np.any(~np.any(a != 0, axis=-1)):
            raise ZeroDivisionError("division by zero")
        return self.vec_pow(a, self.order - 2)

    def __eq__(self, other):
        return (isinstance(other, ExtFieldCtx)
                and (self.q, self.lam, self.modulus_poly)
                == (other.q, other.lam, other.modulus_poly))

    def __hash__(self):
        return hash((self.q, self.lam, self.modulus_poly))

    def __repr__(self):
        return f"ExtFieldCtx(q={self.q}, lam={self.lam})"


@lru_cache(maxsize=None)
def get_ctx(q: int, lam: int) -> ExtFieldCtx:
    return ExtFieldCtx(q, lam)


class ExtFieldElement:
    """Immutable element of F_{q^lambda}, coords ascending basis degree."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: ExtFieldCtx, coords: tuple[int, ...]):
        if len(coords) != ctx.lam:
            raise ValueError("coordinate vector has wrong length")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coords", tuple(int(c) % ctx.q for c in coords))

    def __setattr__(self, *a):
        raise AttributeError("ExtFieldElement is immutable")

    def _check(self, other: "ExtFieldElement"):
        if self.ctx != other.ctx:
            raise ValueError("operands belong to different fields")

    def __add__(self, other):
        self._check(other)
        q = self.ctx.q
        return ExtFieldElement(self.ctx, tuple((a + b) % q for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        q = self.ctx.q
        return ExtFieldElement(self.ctx, tuple((a - b) % q for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        q = self.ctx.q
        return ExtFieldElement(self.ctx, tuple((-a) % q for a in self.coords))

    def __mul__(self, other):
        self._check(other)
        out = self.ctx.vec_mul(np.array(self.coords), np.array(other.coords))
        return ExtFieldElement(self.ctx, tuple(int(c) for c in out))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.ctx.vec_pow(np.array(self.coords), e)
        return ExtFieldElement(self.ctx, tuple(int(c) for c in out))

    def inverse(self) -> "ExtFieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        return self ** (self.ctx.order - 2)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def serialize(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def __eq__(self, other):
        return (isinstance(other, ExtFieldElement)
                and self.ctx == other.ctx and self.coords == other.coords)

    def __hash__(self):
        return hash((self.ctx.q, self.ctx.lam, self.coords))

    def __repr__(self):
        return f"<{self.serialize()} in F_{self.ctx.q}^{self.ctx.lam}>"


def ext_add(a: ExtFieldElement, b: ExtFieldElement) -> ExtFieldElement:
    return a + b


def ext_mul(a: ExtFieldElement, b: ExtFieldElement) -> ExtFieldElement:
    return a * b


def ext_neg(a: ExtFieldElement) -> ExtFieldElement:
    return -a


def ext_inv(a: ExtFieldElement) -> ExtFieldElement:
    return a.inverse()


# ---------------------------------------------------------------------------
# Univariate polynomials over the extension field
# ---------------------------------------------------------------------------

class UniPoly:
    """Univariate polynomial, coefficients ascending, trailing zeros trimmed."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: ExtFieldCtx, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def eval(self, x: ExtFieldElement) -> ExtFieldElement:
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.ctx.zero()
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return UniPoly(self.ctx, [x + y for x, y in zip(a, b)])

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __repr__(self):
        return f"UniPoly({[c.serialize() for c in self.coeffs]})"


def poly_eval(p: UniPoly, x: ExtFieldElement) -> ExtFieldElement:
    return p.eval(x)


def poly_interpolate(points: list[tuple[ExtFieldElement, ExtFieldElement]]) -> UniPoly:
    """Lagrange interpolation; unique polynomial of degree < len(points)."""
    if not points:
        raise ValueError("need at least one point")
    ctx = points[0][0].ctx
    xs = [p[0] for p in points]
    if len({x.coords for x in xs}) != len(xs):
        raise ValueError("duplicate x-coordinate")
    acc = [ctx.zero()]
    for xi, yi in points:
        # basis polynomial through (xi, 1), zero at other nodes
        num = [ctx.one()]
        denom = ctx.one()
        for xj, _ in points:
            if xj == xi:
                continue
            # num *= (X - xj)
            num = [ctx.zero()] + num
            for k in range(len(num) - 1):
                num[k] = num[k] + (-xj) * num[k + 1]
            denom = denom * (xi - xj)
        scale = yi * denom.inverse()
        while len(acc) < len(num):
            acc.append(ctx.zero())
        for k, c in enumerate(num):
            acc[k] = acc[k] + c * scale
    return UniPoly(ctx, acc)


def streaming_poly_probe(coeff_stream, probes: list[ExtFieldElement]) -> list[ExtFieldElement]:
    """Evaluate a coefficient stream at each probe with O(#probes) state."""
    if not probes:
        return []
    ctx = probes[0].ctx
    acc = [ctx.zero() for _ in probes]
    powers = [ctx.one() for _ in probes]
    for c in coeff_stream:
        for i, x in enumerate(probes):
            acc[i] = acc[i] + c * powers[i]
            powers[i] = powers[i] * x
    return acc
