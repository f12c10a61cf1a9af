"""Solution-family constructors for the five addition laws.

Each equation in the registry admits a finite list of solution shapes on a
semigroup with an involutive automorphism: the zero pair, pairs supported
off the square S^2, scalar multiples of one multiplicative function,
mixtures of two multiplicative functions, and piecewise families assembled
from a multiplicative function chi, an additive function A off chi's null
ideal, and a rho function on the prime part.  :func:`construct` builds the
(f, g) pair of one such case from validated parameters;
:func:`admissible_params` reports which cases a concrete finite carrier
supports and draws random admissible parameters for them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, fields as dc_fields

import numpy as np

from .characters import (AdditiveFn, MultChar, RhoFn, additive_basis,
                         check_condition_I, check_condition_II,
                         parity_residual, rho_space)
from .core import EPS, FiniteSemigroup, FnTable, WindowedSemigroup, square_set
from .dsl import evaluate_residual, parse_equation

EQUATION_IDS = ("cos-sub", "sine-add", "cos-sine-g", "alpha-sym",
                "alpha-skew")

CASE_COUNTS = {"cos-sub": 6, "sine-add": 5, "cos-sine-g": 8,
               "alpha-sym": 8, "alpha-skew": 6}

#: Cases that carry an explicit branch choice.
BRANCHES = {("cos-sub", 5): ("+", "-"),
            ("cos-sine-g", 8): ("chi", "conj"),
            ("alpha-sym", 8): ("chi", "conj")}

#: Equations whose statement carries the non-zero constant alpha.
ALPHA_EQUATIONS = ("alpha-sym", "alpha-skew")

#: Exactly representable scalars for random parameter draws.
SAMPLE_POOL = (1 + 0j, -1 + 0j, 2 + 0j, -2 + 0j, 0.5 + 0j, -0.5 + 0j,
               1j, -1j, 1 + 1j, 1 - 1j)

#: Value pool for random free-function draws (the default oracle alphabet).
FREE_VALUE_POOL = (0j, 1 + 0j, -1 + 0j, 1j, -1j, 0.5 + 0j, -0.5 + 0j,
                   2 + 0j, -2 + 0j)

#: The sigma = id sine addition law that the phi component of the
#: "chi + chi A" families satisfies together with chi.
PHI_LAW = parse_equation("f(x y) = f(x)*g(y) + f(y)*g(x)")


class ConstraintError(ValueError):
    """A case parameter violates one of the case's stated constraints."""


@dataclass(frozen=True)
class CaseId:
    """One case of one equation's solution list, branch included."""

    equation: str
    case: int
    branch: str | None = None

    def __post_init__(self):
        if self.equation not in CASE_COUNTS:
            raise ValueError(f"unknown equation id {self.equation!r}")
        count = CASE_COUNTS[self.equation]
        if not 1 <= self.case <= count:
            raise ValueError(
                f"{self.equation} has cases 1..{count}, got {self.case}")
        allowed = BRANCHES.get((self.equation, self.case))
        if allowed is None and self.branch is not None:
            raise ValueError(
                f"{self.equation} case {self.case} takes no branch")
        if allowed is not None and self.branch not in allowed:
            raise ValueError(
                f"{self.equation} case {self.case} needs a branch in "
                f"{allowed}, got {self.branch!r}")

    def __str__(self):
        tail = self.branch or ""
        return f"{self.equation}/{self.case}{tail}"


def all_case_ids(equation: str) -> list[CaseId]:
    """Every CaseId of one equation, branches expanded."""
    out = []
    for k in range(1, CASE_COUNTS[equation] + 1):
        branches = BRANCHES.get((equation, k), (None,))
        out.extend(CaseId(equation, k, b) for b in branches)
    return out


@dataclass(frozen=True)
class CaseParams:
    """The parameter bundle of one case; only the case's fields are set."""

    chi: object | None = None
    chi1: object | None = None
    chi2: object | None = None
    A: AdditiveFn | None = None
    rho: RhoFn | None = None
    alpha: complex | None = None
    beta: complex | None = None
    delta: complex | None = None
    c: complex | None = None
    c1: complex | None = None
    c2: complex | None = None
    free: FnTable | None = None
    phi: FnTable | None = None

    def present(self) -> frozenset[str]:
        return frozenset(f.name for f in dc_fields(self)
                         if getattr(self, f.name) is not None)


_REQUIRED = {
    ("cos-sub", 1): frozenset(),
    ("cos-sub", 2): frozenset({"free", "c"}),
    ("cos-sub", 3): frozenset({"chi", "alpha"}),
    ("cos-sub", 4): frozenset({"chi1", "chi2", "delta"}),
    ("cos-sub", 5): frozenset({"chi", "A", "rho"}),
    ("cos-sub", 6): frozenset({"chi"}),
    ("sine-add", 1): frozenset({"free"}),
    ("sine-add", 2): frozenset({"free"}),
    ("sine-add", 3): frozenset({"chi", "alpha"}),
    ("sine-add", 4): frozenset({"chi1", "chi2", "c"}),
    ("sine-add", 5): frozenset({"chi", "A", "rho"}),
    ("cos-sine-g", 1): frozenset(),
    ("cos-sine-g", 2): frozenset({"free"}),
    ("cos-sine-g", 3): frozenset({"free"}),
    ("cos-sine-g", 4): frozenset({"chi", "beta"}),
    ("cos-sine-g", 5): frozenset({"chi1", "chi2", "c1"}),
    ("cos-sine-g", 6): frozenset({"chi", "A", "rho"}),
    ("cos-sine-g", 7): frozenset({"chi", "A", "rho"}),
    ("cos-sine-g", 8): frozenset({"chi"}),
    ("alpha-sym", 1): frozenset({"alpha"}),
    ("alpha-sym", 2): frozenset({"alpha", "free"}),
    ("alpha-sym", 3): frozenset({"alpha", "free"}),
    ("alpha-sym", 4): frozenset({"alpha", "chi", "beta"}),
    ("alpha-sym", 5): frozenset({"alpha", "chi1", "chi2", "c1"}),
    ("alpha-sym", 6): frozenset({"alpha", "chi", "A", "rho"}),
    ("alpha-sym", 7): frozenset({"alpha", "chi", "A", "rho"}),
    ("alpha-sym", 8): frozenset({"alpha", "chi"}),
    ("alpha-skew", 1): frozenset({"alpha", "free"}),
    ("alpha-skew", 2): frozenset({"alpha", "free"}),
    ("alpha-skew", 3): frozenset({"alpha", "free"}),
    ("alpha-skew", 4): frozenset({"alpha", "free", "c"}),
    ("alpha-skew", 5): frozenset({"alpha", "chi", "c1", "c2"}),
    ("alpha-skew", 6): frozenset({"alpha", "chi", "A", "rho", "c"}),
}

#: Cases that accept an explicit phi table instead of the (A, rho) pair.
_PHI_ALTERNATIVE = {("cos-sine-g", 6), ("cos-sine-g", 7),
                    ("alpha-sym", 6), ("alpha-sym", 7)}


def _check_fields(case: CaseId, params: CaseParams) -> None:
    required = set(_REQUIRED[(case.equation, case.case)])
    present = params.present()
    if (case.equation, case.case) in _PHI_ALTERNATIVE and "phi" in present:
        required = (required - {"A", "rho"}) | {"phi"}
    if present != required:
        raise ConstraintError(
            f"case {case} requires fields {sorted(required)}, "
            f"got {sorted(present)}")


# ---------------------------------------------------------------------------
# Assembly helpers working on both carrier backends.
# ---------------------------------------------------------------------------

def _finite(S) -> bool:
    return isinstance(S, FiniteSemigroup)


def _zero_fn(S) -> FnTable:
    if _finite(S):
        return FnTable(S, values=np.zeros(S.n))
    return FnTable(S, formula=lambda x: 0j)


def _char_fn(chi) -> FnTable:
    return chi.fn


def _conj_fn(chi) -> FnTable:
    return chi.fn.star()


def _scale(h: FnTable, coeff: complex) -> FnTable:
    if h.finite:
        return FnTable(h.domain, values=complex(coeff) * h.values)
    return FnTable(h.domain,
                   formula=lambda x, c=complex(coeff), f=h: c * f(x))


def _lin(S, *terms: tuple[complex, FnTable]) -> FnTable:
    """Linear combination sum(coeff * table)."""
    if _finite(S) and all(t.finite for _, t in terms):
        vals = np.zeros(S.n, dtype=np.complex128)
        for coeff, t in terms:
            vals = vals + complex(coeff) * t.values
        return FnTable(S, values=vals)
    parts = tuple((complex(c), t) for c, t in terms)
    return FnTable(S, formula=lambda x: sum(c * t(x) for c, t in parts))


def _piece(S, chi, s_chi: complex, s_a: complex, A: AdditiveFn,
           s_rho: complex, rho: RhoFn) -> FnTable:
    """chi * (s_chi + s_a A) off the ideal, 0 on I \\ P, s_rho rho on P."""
    if _finite(S):
        vals = np.array(chi.values * (complex(s_chi) + complex(s_a) * A.values),
                        dtype=np.complex128)
        P = sorted(chi.prime_part)
        if P:
            vals[P] = complex(s_rho) * rho.values[P]
        return FnTable(S, values=vals)

    def formula(x):
        if chi.in_prime_part(x):
            return complex(s_rho) * rho(x)
        if chi.in_ideal(x):
            return 0j
        return chi(x) * (complex(s_chi) + complex(s_a) * A(x))
    return FnTable(S, formula=formula)


def _fn_max_abs(h: FnTable, S) -> float:
    if h.finite:
        return float(np.max(np.abs(h.values))) if h.values.size else 0.0
    return max((abs(h(x)) for x in S.window), default=0.0)


def _fn_is_zero(h: FnTable, S) -> bool:
    return _fn_max_abs(h, S) <= EPS


# ---------------------------------------------------------------------------
# Per-constraint validators, raising ConstraintError with the clause name.
# ---------------------------------------------------------------------------

def _require(cond: bool, clause: str) -> None:
    if not cond:
        raise ConstraintError(clause)


def _near(a: complex, b: complex) -> bool:
    return abs(complex(a) - complex(b)) <= EPS


def _check_even_char(chi, name: str = "chi") -> None:
    _require(getattr(chi, "even", False), f"chi* = chi fails for {name}")


def _check_noneven_char(chi) -> None:
    _require(not getattr(chi, "even", True), "chi* != chi fails")


def _check_distinct(S, chi1, chi2) -> None:
    if _finite(S):
        diff = float(np.max(np.abs(chi1.values - chi2.values)))
    else:
        diff = max(abs(chi1(x) - chi2(x)) for x in S.window)
    _require(diff > EPS, "chi1 = chi2")


def _check_alpha(alpha) -> None:
    _require(alpha is not None and not _near(alpha, 0), "alpha = 0")


def _check_free_vanishing(S, h: FnTable, arbitrary: bool = False) -> None:
    if arbitrary:
        return
    _require(_finite(S), "free-function cases need a finite carrier")
    _require(not h.is_zero(), "free function is zero")
    sq = sorted(square_set(S))
    if sq:
        _require(float(np.max(np.abs(h.values[sq]))) <= EPS,
                 "free function does not vanish on S^2")


def _check_additive(S, chi, A: AdditiveFn, parity: str) -> None:
    _require(A.parity == parity, f"A parity must be {parity}")
    _require(parity_residual(A, chi, S) <= EPS, f"A parity must be {parity}")
    if _finite(S):
        D = sorted(set(range(S.n)) - chi.null_ideal)
        for x in D:
            for y in D:
                _require(_near(A(S.mul(x, y)), A(x) + A(y)),
                         "A is not additive")
        off = sorted(chi.null_ideal)
        if off and A.values is not None:
            _require(float(np.max(np.abs(A.values[off]))) <= EPS,
                     "A is not supported on S \\ I")


def _check_rho(S, chi, rho: RhoFn, parity: str) -> None:
    _require(rho.parity == parity, f"rho parity must be {parity}")
    _require(parity_residual(rho, chi, S) <= EPS,
             f"rho parity must be {parity}")
    _require(check_condition_I(rho, chi, S), "condition (I) fails")


def _sine_piece(S, params: CaseParams, parity: str = "even") -> FnTable:
    """Validated chi A | 0 | rho table from either phi or (A, rho)."""
    chi = params.chi
    _check_even_char(chi)
    if params.phi is not None:
        phi = params.phi
        _require(_max_parity_dev(phi, S) <= EPS, "phi is not even")
        _require(not _fn_is_zero(phi, S), "phi = 0")
        res = evaluate_residual(PHI_LAW, {"f": phi, "g": chi.fn}, S)
        _require(res <= EPS, "phi does not solve its sine law")
        return phi
    _check_additive(S, chi, params.A, parity)
    _check_rho(S, chi, params.rho, parity)
    piece = _piece(S, chi, 0, 1, params.A, 1, params.rho)
    _require(not _fn_is_zero(piece, S), "A and rho both vanish")
    _require(check_condition_II(piece, chi, S), "condition (II) fails")
    return piece


def _max_parity_dev(h: FnTable, S) -> float:
    if h.finite:
        return float(np.max(np.abs(h.values[S.sigma] - h.values)))
    return max(abs(h(S.sigma(x)) - h(x)) for x in S.window)


# ---------------------------------------------------------------------------
# Case builders.  Each returns the unlabeled (f, g) pair.
# ---------------------------------------------------------------------------

def _cos_sub(case: CaseId, p: CaseParams, S):
    k = case.case
    if k == 1:
        return _zero_fn(S), _zero_fn(S)
    if k == 2:
        _require(any(_near(p.c, v) for v in (1j, -1j)), "c not in {i, -i}")
        _check_free_vanishing(S, p.free)
        return _scale(p.free, p.c), p.free
    if k == 3:
        _check_even_char(p.chi)
        _require(not any(_near(p.alpha, v) for v in (1j, -1j)),
                 "alpha in {i, -i}")
        s = 1 / (1 + complex(p.alpha) ** 2)
        cf = _char_fn(p.chi)
        return _scale(cf, complex(p.alpha) * s), _scale(cf, s)
    if k == 4:
        _require(not any(_near(p.delta, v) for v in (0, 1j, -1j)),
                 "delta in {0, i, -i}")
        _check_even_char(p.chi1, "chi1")
        _check_even_char(p.chi2, "chi2")
        _check_distinct(S, p.chi1, p.chi2)
        d = complex(p.delta)
        den = 1 / d + d
        c1, c2 = _char_fn(p.chi1), _char_fn(p.chi2)
        f = _lin(S, (-1 / den, c1), (1 / den, c2))
        g = _lin(S, (1 / (d * den), c1), (d / den, c2))
        return f, g
    if k == 5:
        # f = -i(chi A | 0 | rho), g = chi + (branch) i f.
        piece = _sine_piece(S, p)
        f = _scale(piece, -1j)
        sign = 1j if case.branch == "+" else -1j
        g = _lin(S, (1, _char_fn(p.chi)), (sign, f))
        return f, g
    # case 6: f = -i(chi - chi*)/2, g = (chi + chi*)/2 with chi* != chi.
    _check_noneven_char(p.chi)
    cf, sf = _char_fn(p.chi), _conj_fn(p.chi)
    f = _lin(S, (-0.5j, cf), (0.5j, sf))
    g = _lin(S, (0.5, cf), (0.5, sf))
    return f, g


def _sine_add(case: CaseId, p: CaseParams, S):
    k = case.case
    if k == 1:
        return _zero_fn(S), p.free
    if k == 2:
        _check_free_vanishing(S, p.free)
        return p.free, _zero_fn(S)
    if k == 3:
        _check_even_char(p.chi)
        _check_alpha(p.alpha)
        cf = _char_fn(p.chi)
        return _scale(cf, 1 / (2 * complex(p.alpha))), _scale(cf, 0.5)
    if k == 4:
        _require(p.c is not None and not _near(p.c, 0), "c = 0")
        _check_even_char(p.chi1, "chi1")
        _check_even_char(p.chi2, "chi2")
        _check_distinct(S, p.chi1, p.chi2)
        c1, c2 = _char_fn(p.chi1), _char_fn(p.chi2)
        f = _lin(S, (complex(p.c), c1), (-complex(p.c), c2))
        g = _lin(S, (0.5, c1), (0.5, c2))
        return f, g
    piece = _sine_piece(S, p)
    return piece, _char_fn(p.chi)


def _cos_sine_g(case: CaseId, p: CaseParams, S):
    k = case.case
    if k == 1:
        return _zero_fn(S), _zero_fn(S)
    if k == 2:
        _check_free_vanishing(S, p.free)
        return p.free, _zero_fn(S)
    if k == 3:
        _check_free_vanishing(S, p.free)
        return p.free, _scale(p.free, 2)
    if k == 4:
        _check_even_char(p.chi)
        _require(not any(_near(p.beta, v) for v in (0, 0.5)),
                 "beta in {0, 1/2}")
        b = complex(p.beta)
        cf = _char_fn(p.chi)
        return _scale(cf, b * b / (2 * b - 1)), _scale(cf, b)
    if k == 5:
        _require(not any(_near(p.c1, v) for v in (0, 1, -1)),
                 "c1 in {0, 1, -1}")
        _check_even_char(p.chi1, "chi1")
        _check_even_char(p.chi2, "chi2")
        _check_distinct(S, p.chi1, p.chi2)
        w = complex(p.c1)
        fc = (w * w + 1) / (2 * w)
        c1, c2 = _char_fn(p.chi1), _char_fn(p.chi2)
        f = _lin(S, ((1 + fc) / 2, c1), ((1 - fc) / 2, c2))
        g = _lin(S, ((1 + w) / 2, c1), ((1 - w) / 2, c2))
        return f, g
    if k == 6:
        phi = _sine_piece(S, p)
        cf = _char_fn(p.chi)
        return _lin(S, (0.5, phi), (1, cf)), _lin(S, (1, phi), (1, cf))
    if k == 7:
        phi = _sine_piece(S, p)
        cf = _char_fn(p.chi)
        return _lin(S, (1, phi), (1, cf)), cf
    # case 8: f = (chi + chi*)/2, g one of chi, chi*.
    _check_noneven_char(p.chi)
    cf, sf = _char_fn(p.chi), _conj_fn(p.chi)
    f = _lin(S, (0.5, cf), (0.5, sf))
    g = cf if case.branch == "chi" else sf
    return f, g


def _alpha_sym(case: CaseId, p: CaseParams, S):
    _check_alpha(p.alpha)
    a = complex(p.alpha)
    k = case.case
    if k == 1:
        return _zero_fn(S), _zero_fn(S)
    if k == 2:
        _check_free_vanishing(S, p.free)
        return p.free, _zero_fn(S)
    if k == 3:
        _check_free_vanishing(S, p.free)
        return _zero_fn(S), p.free
    # Cases 4..8 come from the cos-sine-g tables (fE, gE) of the same case
    # number through f = alpha (gE - 2 fE), g = gE.
    fe, ge = _cos_sine_g(CaseId("cos-sine-g", k, case.branch), p, S)
    f = _lin(S, (a, ge), (-2 * a, fe))
    return f, ge


def _alpha_skew(case: CaseId, p: CaseParams, S):
    _check_alpha(p.alpha)
    a = complex(p.alpha)
    k = case.case
    if k == 1:
        return _scale(p.free, a), p.free
    if k == 2:
        _check_free_vanishing(S, p.free)
        return _zero_fn(S), p.free
    if k == 3:
        _check_free_vanishing(S, p.free)
        return p.free, _zero_fn(S)
    if k == 4:
        _require(not any(_near(p.c, v) for v in (0, -1)), "c in {0, -1}")
        _check_free_vanishing(S, p.free)
        lam = complex(p.c) / (a * (1 + complex(p.c)))
        return p.free, _scale(p.free, lam)
    if k == 5:
        _check_noneven_char(p.chi)
        _require(p.c1 is not None and not _near(p.c1, 0), "c1 = 0")
        _require(p.c2 is not None, "c2 is required")
        w1, w2 = complex(p.c1), complex(p.c2)
        cf, sf = _char_fn(p.chi), _conj_fn(p.chi)
        f = _lin(S, (a * (1 + w1 + w2) / 2, cf),
                 (a * (1 - w1 - w2) / 2, sf))
        g = _lin(S, ((1 + w2) / 2, cf), ((1 - w2) / 2, sf))
        return f, g
    # case 6: f = alpha chi (1 + (1+c) A) | 0 | alpha (1+c) rho,
    #         g = chi (1 + c A) | 0 | c rho, with A and rho odd.
    _require(p.c is not None, "c is required")
    chi = p.chi
    _check_even_char(chi)
    _check_additive(S, chi, p.A, "odd")
    _check_rho(S, chi, p.rho, "odd")
    piece = _piece(S, chi, 0, 1, p.A, 1, p.rho)
    _require(not _fn_is_zero(piece, S), "A and rho both vanish")
    _require(check_condition_II(piece, chi, S), "condition (II) fails")
    w = complex(p.c)
    f = _piece(S, chi, a, a * (1 + w), p.A, a * (1 + w), p.rho)
    g = _piece(S, chi, 1, w, p.A, w, p.rho)
    return f, g


_BUILDERS = {"cos-sub": _cos_sub, "sine-add": _sine_add,
             "cos-sine-g": _cos_sine_g, "alpha-sym": _alpha_sym,
             "alpha-skew": _alpha_skew}


def construct(case: CaseId, params: CaseParams, S):
    """Build the (f, g) tables of one solution case.

    Raises :class:`ConstraintError` naming the violated clause when the
    parameters do not satisfy the case's side constraints.
    """
    _check_fields(case, params)
    f, g = _BUILDERS[case.equation](case, params, S)
    f.label, g.label = "f", "g"
    return f, g


def zero_additive(S: FiniteSemigroup, chi, parity: str = "even") -> AdditiveFn:
    dom = frozenset(set(range(S.n)) - chi.null_ideal)
    return AdditiveFn(domain=dom, values=np.zeros(S.n, dtype=np.complex128),
                      parity=parity)


def combine_additive(S: FiniteSemigroup, basis: list[AdditiveFn],
                     coeffs, chi, parity: str = "even") -> AdditiveFn:
    """Linear combination of basis additive functions (empty = zero)."""
    vals = np.zeros(S.n, dtype=np.complex128)
    for c, b in zip(coeffs, basis):
        vals = vals + complex(c) * b.values
    if basis:
        return AdditiveFn(domain=basis[0].domain, values=vals, parity=parity)
    return AdditiveFn(domain=frozenset(set(range(S.n)) - chi.null_ideal),
                      values=vals, parity=parity)


# ---------------------------------------------------------------------------
# Admissible-parameter menus.
# ---------------------------------------------------------------------------

@dataclass
class ParamMenu:
    """What one case can draw on a concrete finite carrier."""

    case: CaseId
    S: FiniteSemigroup
    available: bool = False
    notes: list[str] = field(default_factory=list)
    chars: list = field(default_factory=list)
    char_pairs: list = field(default_factory=list)
    free_support: tuple[int, ...] = ()
    free_arbitrary: bool = False
    additive: dict = field(default_factory=dict)
    rho_spaces: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)
    branches: tuple = ()

    def describe(self) -> dict:
        names = self.S.elements
        return {
            "equation": self.case.equation,
            "case": self.case.case,
            "branch": self.case.branch,
            "available": self.available,
            "notes": list(self.notes),
            "characters": [[[z.real, z.imag] for z in chi.values]
                           for chi in self.chars],
            "character_pairs": len(self.char_pairs),
            "free_support": [names[i] for i in self.free_support],
            "additive_dims": {str(k): len(v) for k, v in
                              self.additive.items()},
            "rho_dims": {str(k): sp.dimension for k, sp in
                         self.rho_spaces.items()},
            "constants": dict(self.constants),
        }

    # -- random draws -----------------------------------------------------

    def sample(self, rng) -> CaseParams | None:
        """One random admissible parameter bundle, or None if unavailable.

        Draws are retried through construct() so that every returned bundle
        is actually accepted.
        """
        if not self.available:
            return None
        for _ in range(80):
            params = self._draw(rng)
            if params is None:
                return None
            try:
                construct(self.case, params, self.S)
            except ConstraintError:
                continue
            return params
        return None

    def _draw(self, rng) -> CaseParams | None:
        eq, k = self.case.equation, self.case.case
        out: dict = {}
        if eq in ALPHA_EQUATIONS:
            out["alpha"] = _pick(rng, SAMPLE_POOL)
        for name, pool in self._constant_pools().items():
            out[name] = _pick(rng, pool)
        if self._wants_single_char():
            idx = rng.randrange(len(self.chars))
            out["chi"] = self.chars[idx]
            if self._wants_piece():
                parity = "odd" if (eq, k) == ("alpha-skew", 6) else "even"
                A, rho = self._draw_piece(rng, idx, parity)
                out["A"], out["rho"] = A, rho
        if self._wants_pair():
            out["chi1"], out["chi2"] = self.char_pairs[
                rng.randrange(len(self.char_pairs))]
        if self._wants_free():
            out["free"] = self._draw_free(rng)
        return CaseParams(**out)

    def _constant_pools(self) -> dict:
        pools = {}
        no = lambda *bad: tuple(v for v in SAMPLE_POOL
                                if not any(_near(v, b) for b in bad))
        eq, k = self.case.equation, self.case.case
        if (eq, k) == ("cos-sub", 2):
            pools["c"] = (1j, -1j)
        if (eq, k) == ("cos-sub", 3):
            pools["alpha"] = no(1j, -1j) + (0j,)
        if (eq, k) == ("cos-sub", 4):
            pools["delta"] = no(1j, -1j)
        if (eq, k) == ("sine-add", 3):
            pools["alpha"] = SAMPLE_POOL
        if (eq, k) == ("sine-add", 4):
            pools["c"] = SAMPLE_POOL
        if (eq, k) in (("cos-sine-g", 4), ("alpha-sym", 4)):
            pools["beta"] = no(0.5)
        if (eq, k) in (("cos-sine-g", 5), ("alpha-sym", 5)):
            pools["c1"] = no(1, -1)
        if (eq, k) == ("alpha-skew", 4):
            pools["c"] = no(-1)
        if (eq, k) == ("alpha-skew", 5):
            pools["c1"] = SAMPLE_POOL
            pools["c2"] = SAMPLE_POOL + (0j,)
        if (eq, k) == ("alpha-skew", 6):
            pools["c"] = SAMPLE_POOL + (0j,)
        return pools

    def _wants_single_char(self) -> bool:
        return bool(self.chars) and "chi" in _REQUIRED[
            (self.case.equation, self.case.case)]

    def _wants_pair(self) -> bool:
        return "chi1" in _REQUIRED[(self.case.equation, self.case.case)]

    def _wants_free(self) -> bool:
        return "free" in _REQUIRED[(self.case.equation, self.case.case)]

    def _wants_piece(self) -> bool:
        return "A" in _REQUIRED[(self.case.equation, self.case.case)]

    def _draw_free(self, rng) -> FnTable:
        vals = np.zeros(self.S.n, dtype=np.complex128)
        support = (tuple(range(self.S.n)) if self.free_arbitrary
                   else self.free_support)
        for i in support:
            vals[i] = _pick(rng, FREE_VALUE_POOL)
        if not self.free_arbitrary and support and \
                float(np.max(np.abs(vals))) <= EPS:
            vals[support[0]] = 1.0
        return FnTable(self.S, values=vals)

    def _draw_piece(self, rng, idx: int, parity: str):
        basis = self.additive.get(idx, [])
        space = self.rho_spaces.get(idx)
        chi = self.chars[idx]
        small = (0j, 1 + 0j, -1 + 0j, 2 + 0j, 1j)
        for _ in range(40):
            coeffs = [_pick(rng, small) for _ in basis]
            frees = [_pick(rng, small)
                     for _ in range(space.dimension if space else 0)]
            if not any(abs(v) > 0 for v in coeffs + frees):
                continue
            A = combine_additive(self.S, basis, coeffs, chi, parity)
            rho = (space.instance(frees, self.S.n) if space
                   else RhoFn(domain=frozenset(chi.prime_part),
                              values=np.zeros(self.S.n), parity=parity))
            rho = RhoFn(domain=rho.domain, values=rho.values, parity=parity)
            return A, rho
        A = combine_additive(self.S, basis, [1] * len(basis), chi, parity)
        rho = (space.instance([1] * space.dimension, self.S.n) if space
               else RhoFn(domain=frozenset(chi.prime_part),
                          values=np.zeros(self.S.n), parity=parity))
        rho = RhoFn(domain=rho.domain, values=rho.values, parity=parity)
        return A, rho


def _pick(rng, pool):
    return pool[rng.randrange(len(pool))]


def _conj_char(chi: MultChar) -> MultChar:
    return MultChar(chi.semigroup, chi.conj, check=False)


def admissible_params(case: CaseId, S: FiniteSemigroup,
                      characters) -> ParamMenu:
    """The concrete parameter menu of one case on one finite carrier."""
    if not isinstance(S, FiniteSemigroup):
        raise TypeError("admissible_params needs a finite semigroup")
    menu = ParamMenu(case=case, S=S)
    evens = [c for c in characters if c.even]
    nonevens = [c for c in characters if not c.even]
    nonsq = tuple(sorted(set(range(S.n)) - square_set(S)))
    eq, k = case.equation, case.case

    def free_vanish():
        menu.free_support = nonsq
        menu.available = bool(nonsq)
        if not nonsq:
            menu.notes.append("S^2 = S leaves no non-zero function "
                              "vanishing on S^2")

    def free_any():
        menu.free_arbitrary = True
        menu.available = True

    def single_even():
        menu.chars = list(evens)
        menu.available = bool(evens)
        if not evens:
            menu.notes.append("no even character")

    def pair_even():
        menu.char_pairs = [(a, b) for a, b in
                           itertools.combinations(evens, 2)]
        menu.available = bool(menu.char_pairs)
        if not menu.char_pairs:
            menu.notes.append("fewer than two even characters")

    def noneven():
        menu.chars = list(nonevens)
        menu.available = bool(nonevens)
        if not nonevens:
            menu.notes.append("no character with chi* != chi")

    def piecewise(parity: str):
        for chi in evens:
            basis = additive_basis(S, chi, parity)
            space = rho_space(chi, S, parity)
            if len(basis) + space.dimension > 0:
                idx = len(menu.chars)
                menu.chars.append(chi)
                menu.additive[idx] = basis
                menu.rho_spaces[idx] = space
        menu.available = bool(menu.chars)
        if not menu.chars:
            menu.notes.append(
                f"no even character carries a non-zero {parity} A or rho")

    kind = {
        ("cos-sub", 1): lambda: setattr(menu, "available", True),
        ("cos-sub", 2): free_vanish,
        ("cos-sub", 3): single_even,
        ("cos-sub", 4): pair_even,
        ("cos-sub", 5): lambda: piecewise("even"),
        ("cos-sub", 6): noneven,
        ("sine-add", 1): free_any,
        ("sine-add", 2): free_vanish,
        ("sine-add", 3): single_even,
        ("sine-add", 4): pair_even,
        ("sine-add", 5): lambda: piecewise("even"),
        ("cos-sine-g", 1): lambda: setattr(menu, "available", True),
        ("cos-sine-g", 2): free_vanish,
        ("cos-sine-g", 3): free_vanish,
        ("cos-sine-g", 4): single_even,
        ("cos-sine-g", 5): pair_even,
        ("cos-sine-g", 6): lambda: piecewise("even"),
        ("cos-sine-g", 7): lambda: piecewise("even"),
        ("cos-sine-g", 8): noneven,
        ("alpha-sym", 1): lambda: setattr(menu, "available", True),
        ("alpha-sym", 2): free_vanish,
        ("alpha-sym", 3): free_vanish,
        ("alpha-sym", 4): single_even,
        ("alpha-sym", 5): pair_even,
        ("alpha-sym", 6): lambda: piecewise("even"),
        ("alpha-sym", 7): lambda: piecewise("even"),
        ("alpha-sym", 8): noneven,
        ("alpha-skew", 1): free_any,
        ("alpha-skew", 2): free_vanish,
        ("alpha-skew", 3): free_vanish,
        ("alpha-skew", 4): free_vanish,
        ("alpha-skew", 5): _askew5_menu,
        ("alpha-skew", 6): lambda: piecewise("odd"),
    }
    action = kind[(eq, k)]
    if action is _askew5_menu:
        _askew5_menu(menu, nonevens)
    else:
        action()

    menu.branches = BRANCHES.get((eq, k), ())
    menu.constants = _CONSTANT_CLAUSES.get((eq, k), {})
    if eq in ALPHA_EQUATIONS:
        menu.constants = {**menu.constants, "alpha": "alpha != 0"}
    return menu


def _askew5_menu(menu: ParamMenu, nonevens) -> None:
    seen = set()
    for chi in nonevens:
        pair_key = frozenset((chi.key(), _conj_char(chi).key()))
        if pair_key in seen:
            continue
        seen.add(pair_key)
        menu.chars.append(chi)
    menu.available = bool(menu.chars)
    if not menu.chars:
        menu.notes.append("no character with chi* != chi")


_CONSTANT_CLAUSES = {
    ("cos-sub", 2): {"c": "c in {i, -i}"},
    ("cos-sub", 3): {"alpha": "alpha not in {i, -i} (alpha = 0 gives f = 0)"},
    ("cos-sub", 4): {"delta": "delta not in {0, i, -i}"},
    ("sine-add", 3): {"alpha": "alpha != 0"},
    ("sine-add", 4): {"c": "c != 0"},
    ("cos-sine-g", 4): {"beta": "beta not in {0, 1/2}"},
    ("cos-sine-g", 5): {"c1": "c1 not in {0, 1, -1}"},
    ("alpha-sym", 4): {"beta": "beta not in {0, 1/2}"},
    ("alpha-sym", 5): {"c1": "c1 not in {0, 1, -1}"},
    ("alpha-skew", 4): {"c": "c not in {0, -1}"},
    ("alpha-skew", 5): {"c1": "c1 != 0", "c2": "c2 unconstrained"},
    ("alpha-skew", 6): {"c": "c unconstrained"},
}
