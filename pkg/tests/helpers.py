"""Shared test utilities: independent oracles and pass/fail reporting."""

import cmath
import itertools

import numpy as np

TOL = 1e-9


def ok_line(ok: bool, label: str, detail: str = "") -> bool:
    """Print one [PASS]/[FAIL] line and hand the flag back to the caller."""
    tag = "PASS" if ok else "FAIL"
    text = f"[{tag}] {label}"
    if detail:
        text += f": {detail}"
    print(text, flush=True)
    return ok


def power_period(S, x: int) -> int:
    """Eventual period of the sequence x, x^2, x^3, ... (independent of
    the library's own period helper)."""
    seen = {}
    cur, k = x, 1
    while cur not in seen:
        seen[cur] = k
        cur = S.mul(cur, x)
        k += 1
    return k - seen[cur]


def brute_force_characters(S, tol: float = TOL) -> list[np.ndarray]:
    """Every non-zero multiplicative table on S by exhaustive search.

    An element whose power sequence has eventual period p can only take
    the value 0 or a p-th root of unity, so the product of those candidate
    sets covers all assignments; each one is checked against the full
    multiplication table.
    """
    pools = []
    for x in range(S.n):
        p = power_period(S, x)
        pools.append([0j] + [cmath.exp(2j * cmath.pi * k / p)
                             for k in range(p)])
    found = []
    seen = set()
    for combo in itertools.product(*pools):
        if all(abs(z) <= tol for z in combo):
            continue
        if any(abs(combo[S.mul(i, j)] - combo[i] * combo[j]) > tol
               for i in range(S.n) for j in range(S.n)):
            continue
        key = tuple((round(z.real, 6), round(z.imag, 6)) for z in combo)
        if key not in seen:
            seen.add(key)
            found.append(np.array(combo, dtype=np.complex128))
    return found


def match_tables(xs, ys, tol: float = TOL) -> bool:
    """True when two collections of value tables agree up to reordering."""
    if len(xs) != len(ys):
        return False
    used = set()
    for x in xs:
        hit = None
        for j, y in enumerate(ys):
            if j in used:
                continue
            if np.max(np.abs(np.asarray(x) - np.asarray(y))) <= tol:
                hit = j
                break
        if hit is None:
            return False
        used.add(hit)
    return True


def equation_residual(eq_id: str, f, g, S, alpha=None) -> float:
    """Residual of a named equation, evaluated through the DSL layer."""
    from addlaws.dsl import builtin, evaluate_residual

    binding = {"f": f, "g": g}
    if alpha is not None:
        binding["a"] = alpha
    return evaluate_residual(builtin(eq_id), binding, S)
