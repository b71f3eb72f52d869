"""Non-periodicity certificates, the survey over n, and the constructive witness search."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .hecke_orbit import Mat2, orbit_contains, orbit_mod2
from .mod_two import Inconclusive, ProjClass, psi, reduce_mod2, ring
from .number_field import FieldElement, field
from .surfaces import (
    SingularPointError,
    StaircasePoint,
    build_staircase,
)
from .tracer import target_direction, theorem_direction, trace, transport_matrix

NOT_PERIODIC = "NotPeriodic"
INCONCLUSIVE = "MembershipInconclusive"
NO_OBSTRUCTION = "NoObstruction"


@dataclass
class Certificate:
    n: int
    direction: tuple  # integral pair in Z[lambda]^2
    mod2: ProjClass | None
    orbit_size: int
    p1_size: int
    verdict: str

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "direction": [[str(c) for c in x.coeffs] for x in self.direction],
            "mod2": self.mod2.as_bits() if self.mod2 is not None else None,
            "orbit_size": self.orbit_size,
            "p1_size": self.p1_size,
            "verdict": self.verdict,
        }


def _coerce_pair(n: int, direction) -> tuple:
    F = field(n)
    out = []
    for c in direction:
        if isinstance(c, FieldElement):
            out.append(c)
        elif isinstance(c, (int, Fraction)):
            out.append(F.from_int(c))
        else:
            out.append(F.element(c))
    return tuple(out)


def integral_scaling(x: FieldElement, y: FieldElement) -> tuple:
    D = lcm(x.den, y.den)
    return x * D, y * D


def certify_direction(n: int, direction) -> Certificate:
    """Mod-2 test of the slope [x : y] against the reduced orbit of the cusp.

    NotPeriodic is a proof that the direction is not periodic on the surface.
    """
    x, y = _coerce_pair(n, direction)
    if x.is_zero() and y.is_zero():
        raise ValueError("zero direction")
    x, y = integral_scaling(x, y)
    orbit = orbit_mod2(n)
    p1 = ring(n).p1_size()
    try:
        cls = psi(x, y)
    except Inconclusive:
        return Certificate(n, (x, y), None, len(orbit), p1, INCONCLUSIVE)
    verdict = NO_OBSTRUCTION if orbit_contains(cls) else NOT_PERIODIC
    return Certificate(n, (x, y), cls, len(orbit), p1, verdict)


@dataclass
class SurveyRow:
    n: int
    degree: int
    orbit_size: int
    p1_size: int
    word: str
    mod2: str
    verdict: str

    FIELDS = ("n", "degree", "orbit_size", "p1_size", "word", "mod2", "verdict")

    def as_list(self):
        return [getattr(self, f) for f in self.FIELDS]


def survey_row(n: int) -> SurveyRow:
    theorem_direction(n)  # raises if the closed form fails
    word, M = transport_matrix(n)
    cert = certify_direction(n, target_direction(n))
    return SurveyRow(
        n,
        field(n).d,
        cert.orbit_size,
        cert.p1_size,
        word,
        repr(cert.mod2) if cert.mod2 is not None else "-",
        cert.verdict,
    )


def survey(n_min: int, n_max: int) -> list[SurveyRow]:
    """One row per odd n in [max(n_min, 7), n_max]."""
    lo = max(n_min, 7)
    lo += 1 - lo % 2
    return [survey_row(n) for n in range(lo, n_max + 1, 2)]


# ---------------------------------------------------------------------------
# witness search


@dataclass(frozen=True)
class SearchBudget:
    depth: int = 16
    max_frontier: int = 4000
    per_pair_cap: int = 6


MOVES = (("T", 2), ("T", -2), ("S", 0), ("R", 0))


def apply_move(n: int, pt: tuple, move: tuple) -> tuple:
    S = build_staircase(n)
    name, k = move
    if name == "T":
        return S.act_T(pt[0], pt[1], k)
    if name == "S":
        return S.act_S(*pt)
    if name == "R":
        return S.act_R(*pt)
    raise ValueError(f"unknown move {move}")


def move_derivative(n: int, move: tuple) -> Mat2:
    F = field(n)
    one, zero = F.one, F.zero
    name, k = move
    if name == "T":
        return Mat2(one, F.lam * k, zero, one)
    if name == "S":
        return Mat2(zero, -one, one, zero)
    return Mat2(zero, one, one, zero)


def _pair_bits(N: int, pt: tuple) -> tuple:
    return (reduce_mod2(pt[0] * N).bits, reduce_mod2(pt[1] * N).bits)


def _check_start(n: int, P0: StaircasePoint) -> int:
    if P0.n != n:
        raise ValueError("point belongs to a different staircase")
    N = P0.denominator
    if N % 2 == 0:
        raise ValueError(f"starting point needs an odd denominator, got {N}")
    for c in (P0.x, P0.y):
        if c.den != 1 and (c * N).den != 1:
            raise ValueError("coordinates must lie in (1/N) Z[lambda]")
    return N


def _bfs(n: int, P0: StaircasePoint, budget: SearchBudget, stop=None):
    """Deterministic breadth-first exploration; returns (parents, hit or None).

    ``parents`` maps a canonical point to (previous point, move). Points whose
    mod-2 pair already has ``per_pair_cap`` representatives are not kept, and
    each level keeps at most ``max_frontier`` points in discovery order.
    """
    N = P0.denominator
    start = build_staircase(n).canonical(P0.x, P0.y)
    parents = {start: None}
    per_pair = {_pair_bits(N, start): 1}
    if stop is not None and stop(start):
        return parents, start, per_pair
    level = [start]
    for _ in range(budget.depth):
        nxt = []
        for pt in level:
            for mv in MOVES:
                q = apply_move(n, pt, mv)
                if q in parents:
                    continue
                key = _pair_bits(N, q)
                if per_pair.get(key, 0) >= budget.per_pair_cap:
                    continue
                parents[q] = (pt, mv)
                per_pair[key] = per_pair.get(key, 0) + 1
                if stop is not None and stop(q):
                    return parents, q, per_pair
                if len(nxt) < budget.max_frontier:
                    nxt.append(q)
        level = nxt
        if not level:
            break
    return parents, None, per_pair


def reachable_reductions(n: int, P0: StaircasePoint, budget: SearchBudget | None = None) -> set:
    """Mod-2 pairs (bits of N*x, bits of N*y) met by the search from P0."""
    budget = budget or SearchBudget()
    _check_start(n, P0)
    _, _, per_pair = _bfs(n, P0, budget)
    return set(per_pair)


@dataclass
class WitnessPath:
    n: int
    start: StaircasePoint
    moves: list
    final: StaircasePoint
    target_pair: tuple
    direction: tuple  # separatrix direction from the corner (0, 0) through final
    source_direction: tuple  # the same separatrix pulled back to the start point
    trace: object = None

    def replay(self) -> StaircasePoint:
        pt = build_staircase(self.n).canonical(self.start.x, self.start.y)
        for mv in self.moves:
            pt = apply_move(self.n, pt, mv)
        return StaircasePoint(self.n, *pt)

    def denominators(self) -> list[int]:
        pt = build_staircase(self.n).canonical(self.start.x, self.start.y)
        out = [StaircasePoint(self.n, *pt).denominator]
        for mv in self.moves:
            pt = apply_move(self.n, pt, mv)
            out.append(StaircasePoint(self.n, *pt).denominator)
        return out

    def to_json(self) -> dict:
        enc = lambda x: [str(c) for c in x.coeffs]
        return {
            "n": self.n,
            "start": [enc(self.start.x), enc(self.start.y)],
            "moves": [f"{name}{k:+d}" if name == "T" else name for name, k in self.moves],
            "final": [enc(self.final.x), enc(self.final.y)],
            "target_pair": list(self.target_pair),
            "direction": [enc(c) for c in self.direction],
            "source_direction": [enc(c) for c in self.source_direction],
        }


def _in_open_unit_square(pt) -> bool:
    x, y = pt
    return x.sign() > 0 and (x - 1).sign() < 0 and y.sign() > 0 and (y - 1).sign() < 0


def find_witness(n: int, P0: StaircasePoint, budget: SearchBudget | None = None):
    """Search for an affine image Q of P0 in the unit square whose slope is obstructed.

    Returns (WitnessPath, Certificate). The straight segment from the corner
    (0, 0) to Q is a separatrix through Q in a direction certified not periodic;
    its preimage under the move sequence passes through P0.
    Raises LookupError when the budget is exhausted (not a disproof).
    """
    if n == 9:
        raise ValueError("n = 9: the reduced orbit is the whole projective line, no obstruction exists")
    budget = budget or SearchBudget()
    N = _check_start(n, P0)
    orbit = orbit_mod2(n)

    def is_target(pt) -> bool:
        if not _in_open_unit_square(pt):
            return False
        try:
            cls = psi(pt[0] * N, pt[1] * N)
        except Inconclusive:
            return False
        return cls not in orbit

    try:
        parents, hit, _ = _bfs(n, P0, budget, stop=is_target)
    except SingularPointError as exc:
        raise ValueError("starting point is the singularity") from exc
    if hit is None:
        raise LookupError(f"no witness within budget {budget}")
    moves = []
    pt = hit
    while parents[pt] is not None:
        prev, mv = parents[pt]
        moves.append(mv)
        pt = prev
    moves.reverse()

    cert = certify_direction(n, hit)
    if cert.verdict != NOT_PERIODIC:
        raise AssertionError("witness target is not certified")
    M = Mat2.identity(field(n))
    for mv in moves:
        M = move_derivative(n, mv) * M
    source_dir = M.inverse().apply(hit)
    path = WitnessPath(
        n,
        P0,
        moves,
        StaircasePoint(n, *hit),
        _pair_bits(N, hit),
        hit,
        source_dir,
    )
    path.trace = verify_witness_trace(n, hit)
    return path, cert


def verify_witness_trace(n: int, q: tuple):
    """Trace from the corner (0, 0) of the unit square towards q and require a hit at q."""
    S = build_staircase(n)
    poly = S._by_index[S.m]
    surf = S.with_marked_points([(poly, q, "witness")])
    res = trace(surf, (poly, S.rects[poly].vertices()[0]), q, 1, stop_at_marked=True)
    if not res.marked_hits("witness"):
        raise AssertionError("separatrix from the corner does not reach the witness point")
    return res
