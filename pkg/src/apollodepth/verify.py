"""Verification suites for the plateau geometry.

Each suite returns a JSON-ready report::

    {"suite": ..., "params": {...},
     "checks": [{"name", "expected", "actual", "pass"}, ...],
     "passed": n, "failed": m}

Suites:

* ``corona``      — the x-axis corona family: axis tangency at p²/m² with a
  vanishing discriminant, exact pair tangency points on both conics, depth
  at every ellipse center equal to its tree row, and sampled interior
  disjointness.
* ``registry``    — the checked-in plateau equations against the corona
  formula and the arrangement-derived conics, plus the completed-square
  structure observations.
* ``sequences``   — the two rational separation-point sequences and their
  cross-identities.
* ``barycentric`` — the three rational tangency-point families on the
  simplex and their moduli round-trips.
* ``probes``      — depth at every corona tangency point equals the smaller
  neighboring plateau, and an epsilon step into the deeper plateau raises it.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from importlib import resources
from typing import Callable, Dict, List, Optional, Tuple

from . import conics, sternbrocot
from .conics import (
    ArrangementSpec,
    Conic,
    corona_conic,
    corona_square_form,
    derive_conic,
    parabola_conic,
    parabolic_tangency,
    tangency_point,
)
from .descartes import barycentric, depth_exact, depth_float, reduce_to_moduli

__all__ = ["SUITES", "run_suite", "verify_barycentric", "verify_corona",
           "verify_probes", "verify_registry", "verify_sequences"]

PARABOLA_INTERIOR = (Fraction(3, 5), Fraction(3, 5))


def _check(name: str, expected, actual, note: Optional[str] = None) -> dict:
    row = {
        "name": name,
        "expected": str(expected),
        "actual": str(actual),
        "pass": expected == actual,
    }
    if note:
        row["note"] = note
    return row


def _bool_check(name: str, ok: bool, detail: str = "", note: Optional[str] = None) -> dict:
    row = {
        "name": name,
        "expected": "true",
        "actual": "true" if ok else (detail or "false"),
        "pass": bool(ok),
    }
    if note:
        row["note"] = note
    return row


def _report(suite: str, checks: List[dict], params: dict) -> dict:
    failed = sum(1 for c in checks if not c["pass"])
    return {
        "suite": suite,
        "params": params,
        "checks": checks,
        "passed": len(checks) - failed,
        "failed": failed,
    }


def _row_of(pair: Tuple[int, int]) -> int:
    if pair == (0, 1) or pair == (1, 0):
        return 0
    return sternbrocot.sb_row_of(pair)


# --- corona suite -------------------------------------------------------------

def _int_coeffs(conic: Conic) -> Tuple[int, ...]:
    return tuple(int(v) for v in conic.coeffs())


def _bbox(conic: Conic) -> Tuple[float, float, float, float]:
    """Axis-aligned bounds of an ellipse from the vanishing y/x discriminants."""
    a, b, c, d, e, f = (float(v) for v in conic.coeffs())

    def span(aa, bb, cc):
        # roots of aa t^2 + bb t + cc = 0, aa < 0 for an ellipse
        disc = bb * bb - 4.0 * aa * cc
        root = math.sqrt(max(disc, 0.0))
        lo = (-bb + root) / (2.0 * aa)
        hi = (-bb - root) / (2.0 * aa)
        return min(lo, hi), max(lo, hi)

    x_lo, x_hi = span(b * b - 4.0 * a * c, 2.0 * b * e - 4.0 * c * d,
                      e * e - 4.0 * c * f)
    y_lo, y_hi = span(b * b - 4.0 * a * c, 2.0 * b * d - 4.0 * a * e,
                      d * d - 4.0 * a * f)
    return x_lo, x_hi, y_lo, y_hi


def _sample_interior(conic: Conic, count: int, rng: random.Random,
                     denom: int = 1 << 20) -> List[Tuple[int, int]]:
    """Interior points as integer numerator pairs over ``denom`` (exact)."""
    A, B, C, D, E, F = _int_coeffs(conic)
    x_lo, x_hi, y_lo, y_hi = _bbox(conic)
    lo_x, hi_x = int(x_lo * denom) - 1, int(x_hi * denom) + 1
    lo_y, hi_y = int(y_lo * denom) - 1, int(y_hi * denom) + 1
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 80 * count:
            raise RuntimeError("interior sampling failed to converge")
        px = rng.randint(lo_x, hi_x)
        py = rng.randint(lo_y, hi_y)
        value = (A * px * px + B * px * py + C * py * py
                 + (D * px + E * py) * denom + F * denom * denom)
        if value < 0:
            out.append((px, py))
    return out


def verify_corona(max_row: int = 6, samples: int = 1000, rng_seed: int = 20417) -> dict:
    """Tangency, row-depth, and disjointness checks for the x-axis corona."""
    checks: List[dict] = []
    entries = sternbrocot.x_corona(max_row)
    ellipses = [e for e in entries if e.pair != (1, 1)]

    for e in entries:
        tang = e.conic.tangency_x()
        checks.append(
            _check(f"E{list(e.pair)} axis tangency with zero discriminant",
                   Fraction(e.pair[0] ** 2, e.pair[1] ** 2), tang)
        )

    # every unimodular neighbor pair among the members plus the y-axis line
    pool = [(e.pair, e.conic) for e in entries]
    pool.append(((0, 1), corona_conic(0, 1)))
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            (p, m), ci = pool[i]
            (q, n), cj = pool[j]
            if abs(p * n - q * m) != 1:
                continue
            pt = tangency_point(p, m, q, n)
            on_both = ci.eval(*pt) == 0 and cj.eval(*pt) == 0
            checks.append(
                _bool_check(
                    f"E[{p},{m}] ∩ E[{q},{n}] = ({pt[0]}, {pt[1]}) on both conics",
                    on_both,
                )
            )

    for e in ellipses:
        cx, cy = e.conic.center()
        result = depth_exact((1, cx, cy), cap=max_row + 16)
        checks.append(
            _check(f"depth at center of E{list(e.pair)}", e.row, result.depth)
        )

    rng = random.Random(rng_seed)
    denom = 1 << 20
    coeffs = {e.pair: _int_coeffs(e.conic) for e in ellipses}
    clouds = {
        e.pair: _sample_interior(e.conic, samples, rng, denom) for e in ellipses
    }
    overlaps = []
    for e in ellipses:
        for other in ellipses:
            if other.pair == e.pair:
                continue
            A, B, C, D, E_, F_ = coeffs[other.pair]
            for px, py in clouds[e.pair]:
                value = (A * px * px + B * px * py + C * py * py
                         + (D * px + E_ * py) * denom + F_ * denom * denom)
                if value < 0:
                    overlaps.append((e.pair, other.pair))
                    break
    checks.append(
        _bool_check(
            f"interiors pairwise disjoint ({samples} samples per ellipse)",
            not overlaps,
            detail=f"overlapping pairs: {overlaps[:4]}",
        )
    )
    return _report("corona", checks,
                   {"max_row": max_row, "samples": samples, "rng_seed": rng_seed})


# --- registry suite -----------------------------------------------------------

# Registry rows that are x-axis corona members, found by exact conic match.
def _corona_match(conic: Conic, m_limit: int = 64) -> Optional[Tuple[int, int]]:
    for m in range(1, m_limit + 1):
        for p in range(1, m + 1):
            if math.gcd(p, m) == 1 and corona_conic(p, m) == conic:
                return (p, m)
    return None


def _load_arrangement(name: str) -> ArrangementSpec:
    text = (
        resources.files("apollodepth")
        .joinpath(f"data/arrangements/{name}.json")
        .read_text()
    )
    import json

    return ArrangementSpec.from_json(json.loads(text))


def verify_registry() -> dict:
    """The stored plateau equations against the corona formula, the
    arrangement solver, and the completed-square structure."""
    checks: List[dict] = []
    registry = conics.plateau_registry()

    checks.append(_check("registry size", 23, len(registry)))

    required_corona = {
        "1L_{1,1}": (1, 1), "2L_{1,1}": (1, 2), "3L_{1,1}": (1, 3),
        "4L_{1,1}": (1, 4), "5L_{1,1}": (1, 5),
        "3L_{2,1}": (2, 3), "4L_{4,1}": (3, 4), "5L_{8,1}": (4, 5),
    }
    for label, (p, m) in required_corona.items():
        entry = conics.registry_lookup(label)[0]
        want = corona_square_form(p, m)
        checks.append(
            _check(f"{label} = E[{p},{m}] coefficient-for-coefficient",
                   (want.u, want.v, want.w, want.e, want.f),
                   (entry.square.u, entry.square.v, entry.square.w,
                    entry.square.e, entry.square.f))
        )

    matches = 0
    for idx, entry in enumerate(registry):
        pair = _corona_match(entry.conic)
        if pair is None:
            continue
        matches += 1
        row = sternbrocot.sb_row_of(pair)
        depth_digit = int(entry.label.split("L")[0])
        checks.append(
            _check(f"{entry.label} (#{idx}) = E{list(pair)}: depth digit = tree row",
                   depth_digit, row)
        )
    checks.append(_check("corona-form registry members", 15, matches,
                         note="the 4L_{2,1} row is tangent at 4/25 but its y "
                              "coefficient 16/5 differs from the corona form "
                              "value 14/5 for E[2,5]; stored as displayed"))

    diagonal = derive_conic(_load_arrangement("depth4_diagonal"))
    alt = derive_conic(_load_arrangement("depth4_diagonal_disk_anchor"))
    side = derive_conic(_load_arrangement("depth4_side"))
    checks.append(
        _check("depth-4 diagonal arrangement conic",
               Conic.from_coeffs(16, 28, 16, -2, -2, Fraction(1, 16)), diagonal)
    )
    checks.append(_check("anchor independence (line vs unit-disk quadruple)",
                         diagonal, alt))
    checks.append(
        _check("depth-4 side arrangement conic",
               Conic.from_coeffs(Fraction(25, 9), Fraction(10, 3),
                                 Fraction(121, 25), -2, Fraction(-34, 25),
                                 Fraction(9, 25)), side,
               note="a 22/3 cross term sometimes quoted for this plateau "
                    "makes the form degenerate (4AC = B²); the chain "
                    "substitution forces 10/3, matching 4L_{3,1}")
    )
    checks.append(_check("diagonal arrangement = registry 4L_{1,1}",
                         conics.registry_lookup("4L_{1,1}")[0].conic, diagonal))
    checks.append(_check("side arrangement = registry 4L_{3,1}",
                         conics.registry_lookup("4L_{3,1}")[0].conic, side))

    for entry in registry:
        tangent = entry.conic.tangency_x() is not None
        if tangent:
            checks.append(
                _check(f"{entry.label}: tangent to the x-axis ⇒ x coefficient 2",
                       Fraction(2), entry.square.e)
            )

    # Completed-square residue on independently produced conics: moving the
    # perfect square left must leave exactly 4xy on the right.  Scale-free
    # form: sqrt(AC) is rational and 2*sqrt(AC) - B > 0, so the scaling
    # k = 4/(2*sqrt(AC) - B) exists and normalizes the residue to 4.
    residue_targets = [(f"E[{p},{m}]", corona_conic(p, m))
                       for (p, m) in sorted({e.pair for e in sternbrocot.x_corona(6)})
                       if (p, m) != (0, 1)]
    residue_targets += [("depth-4 diagonal", diagonal), ("depth-4 side", side)]
    for name, conic in residue_targets:
        checks.append(
            _bool_check(f"{name}: completed square leaves 4xy",
                        _square_structure(conic))
        )
    for idx, entry in enumerate(registry):
        checks.append(
            _bool_check(f"{entry.label} (#{idx}): completed square leaves 4xy",
                        _square_structure(entry.conic))
        )

    # Informational: the free term is often, not always, 1/A.
    reciprocal = sum(
        1 for entry in registry if entry.square.w * entry.square.u ** 2 == 1
    )
    checks.append(
        _bool_check(
            f"free term reciprocal to x² coefficient on {reciprocal}/23 rows "
            "(heuristic, logged only)",
            True,
        )
    )
    return _report("registry", checks, {})


def _square_structure(conic: Conic) -> bool:
    """True when the quadratic part completes to a perfect square minus 4xy
    under some positive scaling: sqrt(AC) must be rational with
    2*sqrt(AC) - B > 0 (the scaling is then k = 4/(2*sqrt(AC) - B))."""
    from .exactnum import exact_sqrt

    root = exact_sqrt(conic.a * conic.c)
    return root is not None and 2 * root - conic.b > 0


# --- sequences suite ----------------------------------------------------------

def verify_sequences(n_max: int = 6) -> dict:
    checks: List[dict] = []
    parabola = parabola_conic()

    for n in range(2, n_max + 1):
        point = (Fraction(n - 1, n + 1), Fraction(1, 2 * n * (n + 1)))
        checks.append(
            _check(f"main-chain point n={n} = E[{n-1},{n}] ∩ E[{n},{n+1}]",
                   point, tangency_point(n - 1, n, n, n + 1))
        )
        checks.append(
            _check(f"main-chain point n={n} from the parabolic corona",
                   point, parabolic_tangency(n - 1, 1, n, 1))
        )
        lower = corona_conic(n - 1, n)
        upper = corona_conic(n, n + 1)
        checks.append(
            _bool_check(f"main-chain point n={n} on both conics",
                        lower.eval(*point) == 0 and upper.eval(*point) == 0)
        )
        depth = depth_exact((1, point[0], point[1]), cap=n + 16).depth
        checks.append(_check(f"depth at main-chain point n={n}", n, depth))
        # vertical alignment of axis and parabola tangencies
        p = n - 1
        para_pt = tangency_point(p, p + 1, 1, 1)
        checks.append(
            _check(f"E[{p},{p+1}] axis and parabola tangency x-aligned",
                   lower.tangency_x(), para_pt[0])
        )
        checks.append(
            _check(f"E[{p},{p+1}] ∩ parabola", (Fraction(p * p, (p + 1) ** 2),
                                                Fraction(1, (p + 1) ** 2)), para_pt)
        )
        checks.append(
            _bool_check(f"E[{p},{p+1}] parabola point on the parabola",
                        parabola.eval(*para_pt) == 0)
        )

    for n in range(1, n_max + 1):
        point = (Fraction(1, 2 * n * (n + 1)), Fraction(1, 2 * n * (n + 1)))
        checks.append(
            _check(f"diagonal point n={n} = E[1,{n}] ∩ E[1,{n+1}]",
                   point, tangency_point(1, n, 1, n + 1))
        )
        depth = depth_exact((1, point[0], point[1]), cap=n + 16).depth
        checks.append(_check(f"depth at diagonal point n={n}", n, depth))
        m = n + 1
        contact = tangency_point(1, m, 0, 1)
        checks.append(
            _check(f"E[1,{m}] y-axis contact", (Fraction(0), Fraction(1, m * m)),
                   contact)
        )
        checks.append(
            _bool_check(f"E[1,{m}] y-axis contact on its conic",
                        corona_conic(1, m).eval(*contact) == 0)
        )
    return _report("sequences", checks, {"n_max": n_max})


# --- barycentric suite ----------------------------------------------------------

def verify_barycentric(n_max: int = 6) -> dict:
    checks: List[dict] = []
    for n in range(2, n_max + 1):
        den = 4 * n * n + 1
        fam1 = (Fraction(1, den), Fraction(2 * n * (n - 1), den),
                Fraction(2 * n * (n + 1), den))
        den2 = 2 * (n * n - n + 1)
        fam2 = (Fraction(1, den2), Fraction((n - 1) ** 2, den2),
                Fraction(n * n, den2))
        den3 = n * n - n + 1
        fam3 = (Fraction(n * (n - 1), den3), Fraction(1, 2 * den3),
                Fraction(1, 2 * den3))
        for kind, fam in (("chain", fam1), ("parabola", fam2), ("diagonal", fam3)):
            checks.append(
                _check(f"{kind} family n={n} sums to 1", Fraction(1), sum(fam))
            )

        eq9 = (Fraction(n - 1, n + 1), Fraction(1, 2 * n * (n + 1)))
        bary = barycentric((1, eq9[0], eq9[1]))
        checks.append(
            _check(f"chain family n={n} = barycentric of the separation tricycle",
                   tuple(sorted(fam1)), tuple(sorted(bary)))
        )
        moduli = reduce_to_moduli(fam1)
        checks.append(
            _check(f"chain family n={n} back to moduli",
                   tuple(sorted(eq9)), tuple(sorted(moduli)))
        )

        p = n - 1
        para_pt = (Fraction(p * p, (p + 1) ** 2), Fraction(1, (p + 1) ** 2))
        bary2 = barycentric((1, para_pt[0], para_pt[1]))
        checks.append(
            _check(f"parabola family n={n} = barycentric of the contact tricycle",
                   tuple(sorted(fam2)), tuple(sorted(bary2)))
        )

        k = n - 1
        diag = (Fraction(1, 2 * k * (k + 1)), Fraction(1, 2 * k * (k + 1)))
        bary3 = barycentric((1, diag[0], diag[1]))
        checks.append(
            _check(f"diagonal family n={n} = barycentric of the diagonal tricycle",
                   tuple(sorted(fam3)), tuple(sorted(bary3)))
        )
    return _report("barycentric", checks, {"n_max": n_max})


# --- probe suite ----------------------------------------------------------------

def _probe(checks: List[dict], label: str, point, expected: int,
           witness, eps: float, cap: int) -> None:
    depth = depth_exact((1, point[0], point[1]), cap=cap).depth
    checks.append(_check(f"{label}: depth at the point", expected, depth))
    px, py = float(point[0]), float(point[1])
    wx, wy = float(witness[0]) - px, float(witness[1]) - py
    norm = math.hypot(wx, wy)
    displaced = (px + eps * wx / norm, py + eps * wy / norm)
    res = depth_float((1.0, displaced[0], displaced[1]), cap=cap)
    deeper = res.depth if res.depth is not None else cap + 1
    checks.append(
        _bool_check(
            f"{label}: depth {deeper} beyond ε-step exceeds {expected}",
            deeper > expected,
        )
    )


def verify_probes(max_row: int = 5, eps: float = 1e-7, cap: int = 64) -> dict:
    checks: List[dict] = []

    x_entries = sternbrocot.x_corona(max_row)
    by_pair = {e.pair: e for e in x_entries}

    def interior_witness(pair):
        if pair == (1, 1):
            return PARABOLA_INTERIOR
        return by_pair[pair].conic.center()

    for e in x_entries:
        # axis contact: the axis carries depth 0; inward lies the plateau
        axis_pt = (e.tangent_x, Fraction(0))
        _probe(checks, f"E{list(e.pair)} axis contact {axis_pt[0]}", axis_pt, 0,
               interior_witness(e.pair), eps, cap)
        for parent in e.parents:
            if parent == (1, 0):
                continue  # that contact is the axis point already probed
            q, n = parent
            p, m = e.pair
            pt = tangency_point(p, m, q, n)
            expected = min(_row_of(e.pair), _row_of(parent))
            _probe(checks, f"E[{p},{m}] ∩ E[{q},{n}] at ({pt[0]}, {pt[1]})",
                   pt, expected, interior_witness(e.pair), eps, cap)

    for node in sternbrocot.parabolic_corona(max_row):
        if node.degenerate:
            continue
        _probe(checks,
               f"F{list(node.pair)} ∩ parabola at ({node.point[0]}, {node.point[1]})",
               node.point, 1, _f_witness(node), eps, cap)
        for parent, pt in node.parent_tangencies:
            if parent in ((1, 0), (0, 1)):
                expected = 0
            else:
                expected = min(_row_of(node.pair), _row_of(parent)) + 1
            # the node is the deeper side; its parabola contact is a second
            # boundary point, so the chord into it stays interior
            _probe(checks,
                   f"F{list(node.pair)} ∩ F{list(parent)} at ({pt[0]}, {pt[1]})",
                   pt, expected, node.point, eps, cap)

    return _report("probes", checks,
                   {"max_row": max_row, "eps": eps, "cap": cap})


def _f_witness(node) -> Tuple[Fraction, Fraction]:
    """A second boundary point of the F-ellipse: the contact with its first
    generator (the chord from the parabola point stays interior)."""
    return node.parent_tangencies[0][1]


SUITES: Dict[str, Callable[..., dict]] = {
    "corona": verify_corona,
    "registry": verify_registry,
    "sequences": verify_sequences,
    "barycentric": verify_barycentric,
    "probes": verify_probes,
}


def run_suite(name: str, **kwargs) -> dict:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](**kwargs)
