"""Exhaustive solution search over finite value grids, plus reporting.

`grid_solutions` enumerates every pair of functions S -> alphabet and keeps
the pairs solving a chosen equation; `coverage_report` classifies all of
them and tabulates case coverage; `fuzz_constructors` hammers the solution
constructors with random admissible parameters and reports the worst
equation residual seen.

The scan runs in two phases: a chunked broadcast pass masks candidate pairs
on a single probe site, and the survivors get the full residual over every
(x, y) site.  Work can be partitioned over the f-index range ("workers");
partitions are merged in index order, so the result is byte-identical for
any worker count.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .characters import enumerate_characters
from .classify import Unclassified, classify
from .core import EPS, FiniteSemigroup, FnTable, cnum
from .dsl import builtin, evaluate_residual
from .families import (ALPHA_EQUATIONS, EQUATION_IDS, admissible_params,
                       all_case_ids, construct)

#: Grid alphabet used throughout the acceptance runs: zero, the units,
#: the square roots of -1, and the half/double ring.
DEFAULT_ALPHABET = (0, 1, -1, 1j, -1j, 0.5, -0.5, 2, -2)

PAIR_BUDGET = 10 ** 8


class BudgetError(RuntimeError):
    """The requested scan exceeds the candidate-pair budget."""


def validate_alphabet(alphabet) -> tuple[complex, ...]:
    """Check the grid alphabet contract: contains 0, closed under negation."""
    values = tuple(complex(a) for a in alphabet)
    if not values:
        raise ValueError("alphabet must not be empty")
    if len(set(values)) != len(values):
        raise ValueError("alphabet entries must be distinct")
    if not any(abs(v) <= EPS for v in values):
        raise ValueError("alphabet must contain 0")
    for v in values:
        if not any(abs(v + w) <= EPS for w in values):
            raise ValueError(f"alphabet is not closed under negation: "
                             f"missing {-v}")
    return values


def value_tuples(alphabet, n: int) -> np.ndarray:
    """All functions S -> alphabet as a (len(alphabet)^n, n) table.

    Element 0 is the most significant digit: the tuple at row t spells t in
    base len(alphabet) over the alphabet order.
    """
    values = validate_alphabet(alphabet)
    table = np.array(list(itertools.product(values, repeat=n)),
                     dtype=np.complex128)
    return table.reshape(len(values) ** n, n)


def _full_residual(equation: str, Fs: np.ndarray, Gs: np.ndarray,
                   ps: np.ndarray, alpha: complex) -> np.ndarray:
    """Max equation residual per aligned (f, g) pair; Fs, Gs are (k, n)."""
    fL = Fs[:, ps]                       # f(x sigma(y)) at (k, x, y)
    gL = Gs[:, ps]
    fx = Fs[:, :, None]
    fy = Fs[:, None, :]
    gx = Gs[:, :, None]
    gy = Gs[:, None, :]
    if equation == "cos-sub":
        R = gL - gx * gy - fx * fy
    elif equation == "sine-add":
        R = fL - fx * gy - fy * gx
    elif equation == "cos-sine-g":
        R = fL - fx * gy - fy * gx + gx * gy
    elif equation == "alpha-sym":
        R = fL - fx * gy - fy * gx - alpha * gL
    elif equation == "alpha-skew":
        R = fL - fx * gy + fy * gx - alpha * gL
    else:
        raise KeyError(f"unknown equation id {equation!r}")
    return np.max(np.abs(R), axis=(1, 2))


def _site_residual(equation: str, fx, fy, fp, gx, gy, gp,
                   alpha: complex) -> np.ndarray:
    """Residual at one probe site, broadcast to (f-chunk, all g)."""
    if equation == "cos-sub":
        return gp - gx * gy - fx * fy
    if equation == "sine-add":
        return fp - fx * gy - fy * gx
    if equation == "cos-sine-g":
        return fp - fx * gy - fy * gx + gx * gy
    if equation == "alpha-sym":
        return fp - fx * gy - fy * gx - alpha * gp
    if equation == "alpha-skew":
        return fp - fx * gy + fy * gx - alpha * gp
    raise KeyError(f"unknown equation id {equation!r}")


def _scan_range(equation: str, V: np.ndarray, ps: np.ndarray, site,
                lo: int, hi: int, alpha: complex, tol: float) -> list:
    """Solutions with f-index in [lo, hi), in (f, g) index order."""
    x0, y0 = site
    p0 = int(ps[x0, y0])
    sx, sy, sp = V[:, x0], V[:, y0], V[:, p0]
    T = V.shape[0]
    block = max(1, 4_000_000 // max(T, 1))
    out: list[tuple[int, int]] = []
    for a0 in range(lo, hi, block):
        a1 = min(a0 + block, hi)
        R = _site_residual(equation,
                           sx[a0:a1, None], sy[a0:a1, None],
                           sp[a0:a1, None],
                           sx[None, :], sy[None, :], sp[None, :], alpha)
        hits = np.argwhere(np.abs(R) <= tol)
        if hits.size == 0:
            continue
        a_idx = hits[:, 0] + a0
        b_idx = hits[:, 1]
        for c0 in range(0, len(a_idx), 8192):
            sel = slice(c0, c0 + 8192)
            res = _full_residual(equation, V[a_idx[sel]], V[b_idx[sel]],
                                 ps, alpha)
            keep = res <= tol
            out.extend(zip(a_idx[sel][keep].tolist(),
                           b_idx[sel][keep].tolist()))
    return out


def grid_solutions(equation: str, S: FiniteSemigroup,
                   alphabet=DEFAULT_ALPHABET, alpha: complex | None = None,
                   tol: float = EPS, budget: int = PAIR_BUDGET,
                   workers: int = 1) -> list[tuple[FnTable, FnTable]]:
    """Every (f, g) over the alphabet grid solving the equation on S.

    Results come in canonical (f-index, g-index) order.  Raises
    :class:`BudgetError` before scanning when the grid holds more candidate
    pairs than the budget allows.
    """
    if not isinstance(S, FiniteSemigroup):
        raise TypeError("grid scans need a finite semigroup")
    values = validate_alphabet(alphabet)
    if equation not in EQUATION_IDS:
        raise KeyError(f"unknown equation id {equation!r}")
    if equation in ALPHA_EQUATIONS:
        alpha = 1.0 + 0j if alpha is None else complex(alpha)
        if abs(alpha) <= tol:
            raise ValueError("alpha must be non-zero")
    else:
        alpha = 0j
    T = len(values) ** S.n
    total = T * T
    if total > budget:
        raise BudgetError(
            f"scan of {total} candidate pairs exceeds the budget of "
            f"{budget}; shrink the alphabet or raise the budget")
    V = value_tuples(values, S.n)
    ps = S.table[:, S.sigma]
    site = (S.n - 1, S.n - 1)
    workers = max(1, int(workers))
    if workers == 1:
        pairs = _scan_range(equation, V, ps, site, 0, T, alpha, tol)
    else:
        bounds = np.linspace(0, T, workers + 1, dtype=int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                lambda k: _scan_range(equation, V, ps, site,
                                      int(bounds[k]), int(bounds[k + 1]),
                                      alpha, tol),
                range(workers))
        pairs = [p for part in parts for p in part]
    out = []
    for a, b in pairs:
        f = FnTable(S, values=V[a].copy(), label="f")
        g = FnTable(S, values=V[b].copy(), label="g")
        out.append((f, g))
    return out


def coverage_report(S: FiniteSemigroup, alphabet=DEFAULT_ALPHABET,
                    alpha: complex = 1.0, equations=None, tol: float = EPS,
                    budget: int = PAIR_BUDGET, workers: int = 1) -> dict:
    """Classify every grid solution of every equation on one carrier.

    The report maps each equation to its candidate-pair count, solution
    count, the per-case tally, and the classifier's diagnostic dumps for
    anything unclassified.  The payload is deterministic: identical
    inputs give byte-identical JSON for any worker count.
    """
    chars = enumerate_characters(S)
    values = validate_alphabet(alphabet)
    scanned = (len(values) ** S.n) ** 2
    report = {
        "semigroup": S.name,
        "alphabet": [cnum(v) for v in values],
        "alpha": cnum(complex(alpha)),
        "equations": {},
    }
    for eq in (equations or EQUATION_IDS):
        a = complex(alpha) if eq in ALPHA_EQUATIONS else None
        pairs = grid_solutions(eq, S, values, alpha=a, tol=tol,
                               budget=budget, workers=workers)
        cases: dict[str, int] = {}
        dumps = []
        for f, g in pairs:
            hit = classify(eq, f, g, S, alpha=a, chars=chars, tol=tol)
            if isinstance(hit, Unclassified):
                dumps.append(hit.to_json_dict())
            else:
                label = str(hit.case)
                cases[label] = cases.get(label, 0) + 1
        report["equations"][eq] = {
            "pairs_scanned": scanned,
            "solutions": len(pairs),
            "cases": dict(sorted(cases.items())),
            "unclassified": dumps,
        }
    return report


def fuzz_constructors(equation: str, n: int = 500, seed: int = 0,
                      semigroups=None, tol: float = EPS) -> dict:
    """Randomized soak test of the constructors for one equation.

    Draws `n` admissible parameter bundles per case (each over a random
    bundled carrier where the case is populated), rebuilds the pair, and
    records the worst equation residual.  Deterministic in `seed`.
    """
    if semigroups is None:
        from .examples import bundled_finite
        semigroups = bundled_finite()
    rng = random.Random(seed)
    chars = {S.name: enumerate_characters(S) for S in semigroups}
    ast = builtin(equation)
    result = {"equation": equation, "seed": seed, "draws": 0,
              "max_residual": 0.0, "cases": {}, "unavailable": []}
    for case in all_case_ids(equation):
        menus = []
        for S in semigroups:
            menu = admissible_params(case, S, chars[S.name])
            if menu.available:
                menus.append(menu)
        if not menus:
            result["unavailable"].append(str(case))
            continue
        worst = 0.0
        draws = 0
        carriers: dict[str, int] = {}
        for _ in range(n):
            menu = menus[rng.randrange(len(menus))]
            params = menu.sample(rng)
            if params is None:
                continue
            f, g = construct(case, params, menu.S)
            binding = {"f": f, "g": g}
            if equation in ALPHA_EQUATIONS:
                binding["a"] = complex(params.alpha)
            res = evaluate_residual(ast, binding, menu.S)
            worst = max(worst, res)
            draws += 1
            carriers[menu.S.name] = carriers.get(menu.S.name, 0) + 1
        result["cases"][str(case)] = {
            "draws": draws,
            "max_residual": worst,
            "carriers": dict(sorted(carriers.items())),
        }
        result["draws"] += draws
        result["max_residual"] = max(result["max_residual"], worst)
    return result
