"""Exact arithmetic in GF(p^e).

Field elements are plain integers in [0, q): the base-p digits of the
encoding are the coefficients of the residue polynomial, constant term
first.  A ``GF`` instance owns the modulus polynomial and provides both
scalar and numpy-vectorized operations.  Fields with q <= 256 get full
lookup tables (log/antilog construction for the multiplication table);
larger fields fall back to on-the-fly polynomial arithmetic.

Instances are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import numpy as np

Q_LIMIT = 1 << 16
TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _digits(v: int, p: int, n: int) -> list[int]:
    """n base-p digits of v, least significant first."""
    out = []
    for _ in range(n):
        v, r = divmod(v, p)
        out.append(r)
    return out


def _encode(digits, p: int) -> int:
    v = 0
    for d in reversed(digits):
        v = v * p + d
    return v


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a modulo b, b monic, coefficients mod p."""
    a = _poly_trim([x % p for x in a])
    db = len(b) - 1
    while len(a) > db:
        c = a[-1]
        if c:
            shift = len(a) - 1 - db
            for i in range(db):
                a[shift + i] = (a[shift + i] - c * b[i]) % p
        a.pop()
        _poly_trim(a)
    return a


def _is_irreducible(modulus: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    e = len(modulus) - 1
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for v in range(p**d):
            divisor = _digits(v, p, d) + [1]
            if not _poly_rem(modulus, divisor, p):
                return False
    return True


def _smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree e (integer encoding order)."""
    if e == 1:
        return (0, 1)
    for v in range(p**e):
        cand = _digits(v, p, e) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The finite field GF(p^e) acting on integer-encoded elements."""

    def __init__(self, p: int, e: int, modulus=None):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if e < 1:
            raise ValueError(f"e={e} must be >= 1")
        q = p**e
        if q > Q_LIMIT:
            raise ValueError(f"q={q} exceeds supported limit {Q_LIMIT}")
        self.p = p
        self.e = e
        self.q = q
        if modulus is None:
            modulus = _smallest_irreducible(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not _is_irreducible(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = modulus
        self._init_tables()

    # -- construction of lookup tables (q <= 256, e > 1) --------------------

    def _init_tables(self):
        self._add_tab = self._mul_tab = self._neg_tab = None
        self._add_list = self._mul_list = self._neg_list = self._inv_list = None
        self._generator = None
        if self.e == 1 or self.q > TABLE_LIMIT:
            return
        p, e, q = self.p, self.e, self.q
        digs = np.array([_digits(a, p, e) for a in range(q)], dtype=np.int64)
        powers = p ** np.arange(e, dtype=np.int64)
        if p > 2:
            add = ((digs[:, None, :] + digs[None, :, :]) % p * powers).sum(-1)
            self._add_tab = add
            self._add_list = add.tolist()
        neg = (((p - digs) % p) * powers).sum(-1)
        self._neg_tab = neg
        self._neg_list = neg.tolist()
        # log/antilog tables from a multiplicative generator
        g = self._find_generator()
        self._generator = g
        exp = [1]
        for _ in range(q - 2):
            exp.append(self._scalar_mul_poly(exp[-1], g))
        log = np.zeros(q, dtype=np.int64)
        for i, v in enumerate(exp):
            log[v] = i
        exp_arr = np.array(exp, dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        la = log[1:]
        mul[1:, 1:] = exp_arr[(la[:, None] + la[None, :]) % (q - 1)]
        self._mul_tab = mul
        self._mul_list = mul.tolist()
        inv = [0] * q
        for a in range(1, q):
            inv[a] = exp[(q - 1 - log[a]) % (q - 1)]
        self._inv_list = inv

    def _find_generator(self) -> int:
        q = self.q
        if q == 2:
            return 1
        for g in range(2, q):
            x, order = g, 1
            while x != 1:
                x = self._scalar_mul_poly(x, g) if self.e > 1 else (x * g) % self.p
                order += 1
                if order > q - 1:
                    break
            if order == q - 1:
                return g
        raise AssertionError("no multiplicative generator found")

    # -- scalar polynomial fallbacks ----------------------------------------

    def _scalar_add_poly(self, a: int, b: int) -> int:
        p = self.p
        da, db = _digits(a, p, self.e), _digits(b, p, self.e)
        return _encode([(x + y) % p for x, y in zip(da, db)], p)

    def _scalar_mul_poly(self, a: int, b: int) -> int:
        p = self.p
        prod = _poly_mul(_poly_trim(_digits(a, p, self.e)), _poly_trim(_digits(b, p, self.e)), p)
        rem = _poly_rem(prod, list(self.modulus), p)
        return _encode(rem + [0] * (self.e - len(rem)), p)

    # -- scalar field operations --------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_list is not None:
            return self._add_list[a][b]
        return self._scalar_add_poly(a, b)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        if self._neg_list is not None:
            return self._neg_list[a]
        p = self.p
        return _encode([(p - d) % p for d in _digits(a, p, self.e)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if self._mul_list is not None:
            return self._mul_list[a][b]
        return self._scalar_mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self.e == 1:
            return pow(a, -1, self.p)
        if self._inv_list is not None:
            return self._inv_list[a]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        out, base = 1, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def arith(self, op: str, a: int, b: int) -> int:
        if op == "add":
            return self.add(a, b)
        if op == "sub":
            return self.sub(a, b)
        if op == "mul":
            return self.mul(a, b)
        if op == "neg":
            return self.neg(a)
        raise ValueError(f"unknown op {op!r}")

    def from_int(self, c: int) -> int:
        """The element c * 1 (image of an ordinary integer, e.g. -1)."""
        return c % self.p

    def elements(self) -> range:
        return range(self.q)

    def multiplicative_generator(self) -> int:
        if self._generator is None:
            self._generator = self._find_generator()
        return self._generator

    # -- vectorized operations on numpy encoding arrays ----------------------

    def add_arr(self, x, y):
        if self.e == 1:
            return (x + y) % self.p
        if self.p == 2:
            return np.bitwise_xor(x, y)
        if self._add_tab is not None:
            return self._add_tab[x, y]
        return np.frompyfunc(self._scalar_add_poly, 2, 1)(x, y).astype(np.int64)

    def sub_arr(self, x, y):
        if self.e == 1:
            return (x - y) % self.p
        if self.p == 2:
            return np.bitwise_xor(x, y)
        return self.add_arr(x, self.neg_arr(y))

    def neg_arr(self, x):
        if self.e == 1:
            return (-np.asarray(x)) % self.p
        if self.p == 2:
            return np.array(x, dtype=np.int64, copy=True)
        if self._neg_tab is not None:
            return self._neg_tab[x]
        return np.frompyfunc(self.neg, 1, 1)(x).astype(np.int64)

    def mul_arr(self, x, y):
        if self.e == 1:
            return (np.asarray(x) * y) % self.p
        if self._mul_tab is not None:
            return self._mul_tab[x, y]
        return np.frompyfunc(self.mul, 2, 1)(x, y).astype(np.int64)

    def matmul(self, A, B):
        """Product of encoded matrices: A (..., r, k) times B (k, c) or (..., k, c)."""
        A = np.asarray(A)
        B = np.asarray(B)
        if self.e == 1:
            # float64 BLAS path: sums of k products of values < p stay exact
            # integers below 2^53
            k = A.shape[-1]
            if k * (self.p - 1) ** 2 < 2**53:
                af = A.astype(np.float64)
                bf = B.astype(np.float64)
                if A.ndim > 2 and B.ndim == 2:
                    prod = (af.reshape(-1, k) @ bf).reshape(A.shape[:-1] + (B.shape[1],))
                else:
                    prod = af @ bf
                return np.rint(prod).astype(np.int64) % self.p
            return (A @ B) % self.p
        k = A.shape[-1]
        out = None
        for i in range(k):
            a_col = A[..., :, i : i + 1]
            b_row = B[..., i : i + 1, :] if B.ndim > 2 else B[i : i + 1, :]
            term = self.mul_arr(a_col, b_row)
            out = term if out is None else self.add_arr(out, term)
        if out is None:
            shape = np.broadcast_shapes(A.shape[:-2], B.shape[:-2]) + (A.shape[-2], B.shape[-1])
            out = np.zeros(shape, dtype=np.int64)
        return out

    def check_elements(self, arr) -> None:
        arr = np.asarray(arr)
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise ValueError(f"entries outside [0, {self.q})")

    # -- identity / serialization --------------------------------------------

    def header(self) -> str:
        mods = ",".join(str(c) for c in self.modulus)
        return f"# gf p={self.p} e={self.e} modulus={mods}"

    def __eq__(self, other):
        return (
            isinstance(other, GF)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"


def make_field(p: int, e: int) -> GF:
    """GF(p^e) with the lexicographically smallest irreducible modulus."""
    return GF(p, e)


def field_for_order(q: int) -> GF:
    """GF(q) for a prime power q, deterministic modulus choice."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            v = q
            while v % p == 0:
                v //= p
                e += 1
            if v != 1:
                raise ValueError(f"q={q} is not a prime power")
            return GF(p, e)
    raise ValueError(f"q={q} is not a prime power")


def parse_field_header(line: str) -> GF:
    """Inverse of GF.header()."""
    from .errors import SpecParseError

    parts = line.strip().lstrip("#").split()
    if not parts or parts[0] != "gf":
        raise SpecParseError(f"bad field header: {line!r}")
    kv = dict(item.split("=", 1) for item in parts[1:])
    try:
        p = int(kv["p"])
        e = int(kv["e"])
        modulus = tuple(int(c) for c in kv["modulus"].split(","))
    except (KeyError, ValueError) as exc:
        raise SpecParseError(f"bad field header: {line!r}") from exc
    return GF(p, e, modulus)
