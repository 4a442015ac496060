"""Entire functions, bivariate polynomials and truncated Taylor jets.

Entire functions come in three shapes: exact polynomials, exponentials
(exact derivatives in closed form) and truncated power series carrying
a mandatory geometric tail certificate |a_k| <= C / rho^k for k > M.
A truncated series never silently drops its truncation error: every
evaluation returns (value, bound).
"""

from __future__ import annotations

import cmath
from fractions import Fraction

from .errors import DomainError, SeriesOrderError
from .exact import QC, conj, is_exact


# ---------------------------------------------------------------------------
# truncated Taylor jets (used by the Peschl-Minda definitional oracle
# and the Moebius-pullback evaluation path)
# ---------------------------------------------------------------------------


class Jet:
    """Truncated Taylor expansion sum_k c_k u^k, exact in the scalar type."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("jet needs at least the constant coefficient")
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def constant(x, order: int) -> "Jet":
        zero = x * 0
        return Jet([x] + [zero] * order)

    @staticmethod
    def variable(x0, order: int) -> "Jet":
        """Jet of u -> x0 + u."""
        zero = x0 * 0
        one = zero + 1
        if order == 0:
            return Jet([x0])
        return Jet([x0, one] + [zero] * (order - 1))

    def _wrap(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError("jet order mismatch")
            return other
        return Jet.constant(self.coeffs[0] * 0 + other, self.order)

    def __add__(self, other):
        o = self._wrap(other)
        return Jet([a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._wrap(other)
        return Jet([a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __neg__(self):
        return Jet([-a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet([a * other for a in self.coeffs])
        o = self._wrap(other)
        n = self.order
        zero = self.coeffs[0] * 0
        out = [zero] * (n + 1)
        for i, a in enumerate(self.coeffs):
            for j in range(0, n + 1 - i):
                out[i + j] = out[i + j] + a * o.coeffs[j]
        return Jet(out)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("jet has vanishing constant term")
        if isinstance(a[0], QC):
            b0 = QC(1) / a[0]
        elif is_exact(a[0]):
            b0 = Fraction(1) / a[0]
        else:
            b0 = 1 / a[0]
        out = [b0]
        for n in range(1, self.order + 1):
            acc = a[0] * 0
            for k in range(1, n + 1):
                acc = acc + a[k] * out[n - k]
            out.append(-b0 * acc)
        return Jet(out)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return Jet([a / other for a in self.coeffs])

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def exp(self) -> "Jet":
        """Jet of exp(self); float scalars only (divides by integers)."""
        a = self.coeffs
        out = [cmath.exp(complex(a[0]))]
        for n in range(1, self.order + 1):
            acc = 0j
            for k in range(1, n + 1):
                acc += k * complex(a[k]) * out[n - k]
            out.append(acc / n)
        return Jet(out)

    def __repr__(self):
        return f"Jet({self.coeffs!r})"


def moebius_jet(m, zjet: Jet) -> Jet:
    """Apply a Moebius map coefficientwise to a jet: (a j + b)/(c j + d)."""
    num = zjet * m.a + m.b
    den = zjet * m.c + m.d
    return num / den


# ---------------------------------------------------------------------------
# entire functions
# ---------------------------------------------------------------------------


def _strip(coeffs):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class EntireFn:
    """Common surface for the entire-function forms."""

    kind = "abstract"

    def derivative(self, n: int) -> "EntireFn":
        raise NotImplementedError

    def eval(self, t):
        """Return (value, error_bound)."""
        raise NotImplementedError

    def __call__(self, t):
        return self.eval(t)[0]


class PolyFn(EntireFn):
    """Polynomial with ascending coefficients; exact calculus."""

    kind = "poly"
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = _strip(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def derivative(self, n: int = 1) -> "PolyFn":
        if n < 0:
            raise ValueError("derivative order must be >= 0")
        c = self.coeffs
        for _ in range(n):
            c = _strip([k * c[k] for k in range(1, len(c))]) if len(c) > 1 else [c[0] * 0]
        return PolyFn(c)

    def eval(self, t):
        acc = self.coeffs[-1]
        for a in reversed(self.coeffs[:-1]):
            acc = acc * t + a
        return acc, 0.0

    def eval_jet(self, j: Jet) -> Jet:
        acc = Jet.constant(j.coeffs[0] * 0 + self.coeffs[-1], j.order)
        for a in reversed(self.coeffs[:-1]):
            acc = acc * j + a
        return acc

    def __add__(self, other):
        if not isinstance(other, PolyFn):
            other = PolyFn([other])
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return PolyFn([(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0)
                       for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, PolyFn):
            other = PolyFn([other])
        return self + PolyFn([-c for c in other.coeffs])

    def __mul__(self, other):
        if not isinstance(other, PolyFn):
            return PolyFn([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return PolyFn(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PolyFn) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"PolyFn({self.coeffs!r})"


class ExpFn(EntireFn):
    """amp * e^{scale t}; n-th derivative is scale^n amp e^{scale t}."""

    kind = "exp"
    __slots__ = ("scale", "amp")

    def __init__(self, scale, amp=1):
        self.scale = scale
        self.amp = amp

    def derivative(self, n: int = 1) -> "ExpFn":
        if n < 0:
            raise ValueError("derivative order must be >= 0")
        return ExpFn(self.scale, self.amp * self.scale ** n)

    def eval(self, t):
        return self.amp * cmath.exp(complex(self.scale) * complex(t)), 0.0

    def __repr__(self):
        return f"ExpFn(scale={self.scale!r}, amp={self.amp!r})"


class SeriesFn(EntireFn):
    """Truncated power series with a certified geometric tail.

    The certificate asserts |a_k| <= C / rho^k for every k beyond the
    stored order M; evaluation inside |t| < rho returns the Horner value
    of the stored part together with the geometric remainder bound.
    """

    kind = "series"
    __slots__ = ("coeffs", "rho", "C")

    def __init__(self, coeffs, rho: float, C: float):
        if rho <= 0 or C < 0:
            raise ValueError("tail certificate needs rho > 0 and C >= 0")
        self.coeffs = list(coeffs)
        self.rho = float(rho)
        self.C = float(C)

    @property
    def max_order(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self, n: int = 1) -> "SeriesFn":
        if n < 0:
            raise ValueError("derivative order must be >= 0")
        if n > self.max_order:
            raise SeriesOrderError(
                f"series of usable order {self.max_order} cannot supply "
                f"derivative order {n}; extend the series to order >= {n}")
        coeffs, rho, c = self.coeffs, self.rho, self.C
        for _ in range(n):
            coeffs = [k * coeffs[k] for k in range(1, len(coeffs))]
            # |a'_k| = (k+1)|a_{k+1}| <= (k+1) C rho^{-(k+1)} <= (C/rho) (rho/2)^{-k}
            c = c / rho
            rho = rho / 2
        return SeriesFn(coeffs, rho, c)

    def eval(self, t):
        x = abs(complex(t))
        if x >= self.rho:
            raise DomainError(
                f"|t| = {x:.6g} outside the certified radius rho = {self.rho:.6g}")
        acc = complex(self.coeffs[-1]) if self.coeffs else 0j
        for a in reversed(self.coeffs[:-1]):
            acc = acc * complex(t) + complex(a)
        r = x / self.rho
        tail = self.C * r ** (self.max_order + 1) / (1 - r)
        return acc, tail

    def __repr__(self):
        return f"SeriesFn(order={self.max_order}, rho={self.rho}, C={self.C})"


def entire_derivative(g: EntireFn, n: int) -> EntireFn:
    if n < 0:
        raise ValueError("derivative order must be >= 0")
    return g.derivative(n)


def entire_eval(g: EntireFn, t):
    return g.eval(t)


# JSON mini-language ---------------------------------------------------------


def _c_from_pair(p):
    return complex(p[0], p[1])


def entire_from_json(obj: dict) -> EntireFn:
    """{"type":"poly","coeffs":[[re,im],...]} | {"type":"exp","scale":[re,im]}
    | {"type":"series","coeffs":[...],"rho":r,"C":c}"""
    kind = obj.get("type")
    if kind == "poly":
        return PolyFn([_c_from_pair(p) for p in obj["coeffs"]])
    if kind == "exp":
        return ExpFn(_c_from_pair(obj["scale"]))
    if kind == "series":
        return SeriesFn([_c_from_pair(p) for p in obj["coeffs"]],
                        rho=float(obj["rho"]), C=float(obj["C"]))
    raise DomainError(f"unknown function type {kind!r}")


def entire_to_json(g: EntireFn) -> dict:
    def pair(x):
        x = complex(x)
        return [x.real, x.imag]
    if isinstance(g, PolyFn):
        return {"type": "poly", "coeffs": [pair(a) for a in g.coeffs]}
    if isinstance(g, ExpFn):
        if g.amp != 1:
            raise DomainError("only unit-amplitude exponentials serialize")
        return {"type": "exp", "scale": pair(g.scale)}
    if isinstance(g, SeriesFn):
        return {"type": "series", "coeffs": [pair(a) for a in g.coeffs],
                "rho": g.rho, "C": g.C}
    raise DomainError(f"cannot serialize {type(g).__name__}")


# ---------------------------------------------------------------------------
# sparse bivariate polynomials F(z, w)
# ---------------------------------------------------------------------------


class BiPoly:
    """Sparse bivariate polynomial sum a_ij z^i w^j; no zero entries stored.

    On the disk the second slot plays the role of conj(z): the function
    value at z is eval(z, conj(z))."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            for (i, j), a in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
                if a == 0:
                    continue
                key = (int(i), int(j))
                cur = d.get(key)
                val = a if cur is None else cur + a
                if val == 0:
                    d.pop(key, None)
                else:
                    d[key] = val
        self.coeffs = d

    # constructors -----------------------------------------------------

    @staticmethod
    def constant(a) -> "BiPoly":
        return BiPoly({(0, 0): a})

    @staticmethod
    def z(exact: bool = False) -> "BiPoly":
        return BiPoly({(1, 0): QC(1) if exact else 1.0})

    @staticmethod
    def w(exact: bool = False) -> "BiPoly":
        return BiPoly({(0, 1): QC(1) if exact else 1.0})

    @staticmethod
    def monomial(i: int, j: int, a=1) -> "BiPoly":
        return BiPoly({(i, j): a})

    # structure --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def zdeg(self) -> int:
        """Degree in the holomorphic slot; -1 for the zero polynomial."""
        return max((i for i, _ in self.coeffs), default=-1)

    @property
    def wdeg(self) -> int:
        return max((j for _, j in self.coeffs), default=-1)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        terms = ", ".join(f"({i},{j}): {a!r}" for (i, j), a in sorted(self.coeffs.items()))
        return f"BiPoly({{{terms}}})"

    # ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(other)
        d = dict(self.coeffs)
        for k, a in other.coeffs.items():
            v = d.get(k, 0) + a
            if v == 0:
                d.pop(k, None)
            else:
                d[k] = v
        out = BiPoly()
        out.coeffs = d
        return out

    __radd__ = __add__

    def __neg__(self):
        out = BiPoly()
        out.coeffs = {k: -a for k, a in self.coeffs.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return BiPoly.constant(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            out = BiPoly()
            if other != 0:
                out.coeffs = {k: a * other for k, a in self.coeffs.items()}
            return out
        d = {}
        for (i1, j1), a1 in self.coeffs.items():
            for (i2, j2), a2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                v = d.get(k, 0) + a1 * a2
                if v == 0:
                    d.pop(k, None)
                else:
                    d[k] = v
        out = BiPoly()
        out.coeffs = d
        return out

    __rmul__ = __mul__

    def pow(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = BiPoly.constant(1 if not self.coeffs else next(iter(self.coeffs.values())) * 0 + 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # calculus and evaluation --------------------------------------------

    def wirtinger(self, slot: str) -> "BiPoly":
        """Formal partial derivative in the chosen slot ('z' or 'w')."""
        if slot not in ("z", "w"):
            raise ValueError("slot must be 'z' or 'w'")
        d = {}
        for (i, j), a in self.coeffs.items():
            if slot == "z":
                if i == 0:
                    continue
                d[(i - 1, j)] = a * i
            else:
                if j == 0:
                    continue
                d[(i, j - 1)] = a * j
        out = BiPoly()
        out.coeffs = d
        return out

    def eval(self, z, w):
        acc = None
        for (i, j), a in self.coeffs.items():
            term = a * z ** i * w ** j
            acc = term if acc is None else acc + term
        if acc is None:
            return z * 0
        return acc

    def eval_diag(self, z):
        """Value of the disk function: F(z, conj z)."""
        return self.eval(z, conj(z))

    def eval_jet(self, zjet: Jet, w0) -> Jet:
        """Evaluate with a jet in the holomorphic slot and the scalar w0
        frozen in the antiholomorphic slot."""
        # collect by z-power, Horner in the jet
        by_i = {}
        for (i, j), a in self.coeffs.items():
            by_i[i] = by_i.get(i, 0) + a * w0 ** j
        if not by_i:
            return Jet.constant(zjet.coeffs[0] * 0, zjet.order)
        top = max(by_i)
        zero = zjet.coeffs[0] * 0
        acc = Jet.constant(zero + by_i.get(top, 0), zjet.order)
        for i in range(top - 1, -1, -1):
            acc = acc * zjet + by_i.get(i, 0)
        return acc

    def swap_conj(self) -> "BiPoly":
        """BiPoly of the conjugate disk function:
        conj(F(z, conj z)) = G(z, conj z) with G(z, w) = conj(a_ij) z^j w^i."""
        out = BiPoly()
        out.coeffs = {(j, i): conj(a) for (i, j), a in self.coeffs.items()}
        return out

    def is_real_symmetric(self) -> bool:
        """True iff the disk function is real-valued: a_ij = conj(a_ji)."""
        for (i, j), a in self.coeffs.items():
            if self.coeffs.get((j, i), 0) != conj(a):
                return False
        return True


def bipoly_wirtinger(f: BiPoly, slot: str) -> BiPoly:
    return f.wirtinger(slot)


# ---------------------------------------------------------------------------
# the basis family f_{p,q}(z, w) = z^p w^q / (1 - zw)^max(p,q)
# ---------------------------------------------------------------------------


class BasisFpq:
    """Basis element f_{p,q}; spans (its closure) the bivariate model space."""

    __slots__ = ("p", "q")

    def __init__(self, p: int, q: int):
        if p < 0 or q < 0:
            raise ValueError("indices must be non-negative")
        self.p = p
        self.q = q

    def eval(self, z, w):
        den = 1 - z * w
        if den == 0:
            raise DomainError("f_{p,q} undefined on the hypersurface zw = 1")
        m = max(self.p, self.q)
        return z ** self.p * w ** self.q / den ** m

    def __eq__(self, other):
        return isinstance(other, BasisFpq) and (self.p, self.q) == (other.p, other.q)

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"BasisFpq({self.p}, {self.q})"


def fpq_eval(b: BasisFpq, z, w):
    return b.eval(z, w)
