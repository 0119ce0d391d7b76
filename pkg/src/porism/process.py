"""The Poncelet process as an exact iterated map on pairs (c, d).

A state holds c on the outer conic C and d on the inner conic D with c on
the tangent of D at d.  One step takes the second intersection of the
current tangent line with C, then the second contact point of D seen from
the new c -- both by Vieta, so after the (possibly lifting) initial branch
choice everything stays in one field.  The step map is invertible, so orbit
closure is detected by first return to the initial state.
"""

import random
from dataclasses import dataclass, field as dc_field

from .errors import DegenerateInputError, NotOnConicError
from .fields import lift_to_quadratic_extension
from .projective import (P1Point, intersect_line_conic, multiplicity_structure,
                         other_intersection, parametrize, polar, tangent_at,
                         tangency_points, find_point)

DEFAULT_MAX_STEPS_CHAR0 = 10000


class PonceletConfig:
    """A validated pair of smooth distinct conics with cached tangency data."""

    __slots__ = ("outer", "inner", "field", "tangencies", "intersection_type")

    def __init__(self, outer, inner, seed=0):
        if outer.field.char == 2:
            raise ValueError(
                "the Poncelet process cannot be defined in characteristic two: "
                "all tangents of the inner conic pass through one point")
        self.outer = outer
        self.inner = inner
        self.field = outer.field
        self.intersection_type = multiplicity_structure(outer, inner, seed)
        self.tangencies = tangency_points(outer, inner, seed)

    def in_field_tangencies(self):
        return [p for p in self.tangencies if p.field == self.field]

    def lift(self, new_field):
        lifted = PonceletConfig.__new__(PonceletConfig)
        lifted.outer = self.outer.lift(new_field)
        lifted.inner = self.inner.lift(new_field)
        lifted.field = new_field
        lifted.intersection_type = self.intersection_type
        lifted.tangencies = [p.lift(new_field) if new_field.contains(p.field)
                             else p for p in self.tangencies]
        return lifted

    def default_max_steps(self):
        if self.field.size is None:
            return DEFAULT_MAX_STEPS_CHAR0
        return 10 * self.field.char


@dataclass(frozen=True)
class PonceletState:
    c: object  # ProjPoint on the outer conic
    d: object  # ProjPoint on the inner conic
    index: int = 1

    def same_pair(self, other):
        return self.c == other.c and self.d == other.d


@dataclass
class ProcessResult:
    outcome: str            # "closed" | "open"
    period: int = 0
    steps: int = 0
    lifted: bool = False
    orbit: list = dc_field(default_factory=list)  # bounded prefix of states


def start(cfg, c1, branch="min"):
    """Initial state for the process: pick d1 with L(c1, d1) tangent to the
    inner conic.  If the two candidates are conjugate over the working field
    the whole configuration is lifted one quadratic step first.

    Returns (possibly lifted config, state, lifted flag).
    """
    if branch not in ("min", "max"):
        raise ValueError("branch must be 'min' or 'max'")
    if not cfg.outer.contains(c1):
        raise NotOnConicError("initial point must lie on the outer conic")
    pol = polar(cfg.inner, c1)
    candidates = intersect_line_conic(cfg.inner, pol)
    lifted = False
    ext = next((p.field for p, _ in candidates if p.field != cfg.field), None)
    if ext is not None:
        cfg = cfg.lift(ext)
        c1 = c1.lift(ext)
        lifted = True
        candidates = intersect_line_conic(cfg.inner, polar(cfg.inner, c1))
        assert all(p.field == ext for p, _ in candidates)
    pts = sorted((p for p, _ in candidates), key=lambda p: p.sort_key())
    d1 = pts[0] if branch == "min" else pts[-1]
    return cfg, PonceletState(c1, d1, 1), lifted


def is_tangency_state(cfg, state):
    """True when c = d is a point where the two conics are tangent.  Note
    that c = d at a transversal intersection point is a regular state."""
    return (state.c == state.d
            and tangent_at(cfg.outer, state.c) == tangent_at(cfg.inner, state.d))


def step(cfg, state):
    """One Poncelet step; tangency states are fixed points."""
    if is_tangency_state(cfg, state):
        return PonceletState(state.c, state.d, state.index + 1)
    line = tangent_at(cfg.inner, state.d)
    c2 = other_intersection(cfg.outer, line, state.c)
    d2 = other_intersection(cfg.inner, polar(cfg.inner, c2), state.d)
    return PonceletState(c2, d2, state.index + 1)


def step_inverse(cfg, state):
    """The inverse map (the two involutions applied in the other order)."""
    if is_tangency_state(cfg, state):
        return PonceletState(state.c, state.d, state.index - 1)
    d0 = other_intersection(cfg.inner, polar(cfg.inner, state.c), state.d)
    c0 = other_intersection(cfg.outer, tangent_at(cfg.inner, d0), state.c)
    return PonceletState(c0, d0, state.index - 1)


def run(cfg, c1, branch="min", max_steps=None, keep_orbit=64):
    """Iterate the process from c1 until the initial state recurs.

    The step map is a bijection, so the orbit is a pure cycle and comparing
    against the initial state alone detects the period.
    """
    if max_steps is None:
        max_steps = cfg.default_max_steps()
    cfg, initial, lifted = start(cfg, c1, branch)
    at_tangency = is_tangency_state(cfg, initial)
    orbit = [initial]
    state = initial
    for i in range(1, max_steps + 1):
        state = step(cfg, state)
        if not at_tangency and is_tangency_state(cfg, state):
            raise RuntimeError(
                "orbit of a non-tangency start hit a tangency point; "
                "this contradicts invertibility of the step map")
        if state.same_pair(initial):
            return ProcessResult("closed", period=i, steps=i, lifted=lifted,
                                 orbit=orbit[:keep_orbit])
        if len(orbit) < keep_orbit:
            orbit.append(state)
    return ProcessResult("open", period=0, steps=max_steps, lifted=lifted,
                         orbit=orbit[:keep_orbit])


def sample_starts(cfg, num_starts, seed):
    """Deterministic sample of points of the outer conic away from the
    tangency points, via the conic's parametrization."""
    rng = random.Random(seed)
    par = parametrize(cfg.outer, find_point(cfg.outer, seed))
    excluded = set()
    for p in cfg.in_field_tangencies():
        excluded.add(par.param_of(p))
    params = [P1Point.infinity(cfg.field)]
    if cfg.field.size is not None:
        pool = [P1Point.affine(e) for e in cfg.field.elements()]
        params.extend(pool)
        rng.shuffle(params)
    else:
        from fractions import Fraction
        seen = set()
        while len(seen) < 4 * num_starts + 8:
            seen.add(Fraction(rng.randrange(-50, 51), rng.randrange(1, 12)))
        params.extend(P1Point.affine(cfg.field(v)) for v in sorted(seen))
    out = []
    for t in params:
        if t in excluded:
            continue
        out.append(par.point_at(t))
        if len(out) == num_starts:
            break
    return out


@dataclass
class PorismReport:
    intersection_type: tuple
    periods: list          # observed period (0 for open) per start
    num_closed: int
    num_open: int
    passed: bool

    def period_spectrum(self):
        return sorted({p for p in self.periods if p})


def porism_check(cfg, num_starts=10, max_steps=None, seed=0, branch="min"):
    """Run the process from several non-tangency starts and check the
    all-or-nothing law: every closed run shares one period, and runs either
    all close or all stay open."""
    starts = sample_starts(cfg, num_starts, seed)
    periods = []
    for c1 in starts:
        res = run(cfg, c1, branch=branch, max_steps=max_steps, keep_orbit=0)
        periods.append(res.period if res.outcome == "closed" else 0)
    closed = [p for p in periods if p]
    opened = [p for p in periods if not p]
    passed = len(set(closed)) <= 1 and (not closed or not opened)
    return PorismReport(cfg.intersection_type, periods,
                        len(closed), len(opened), passed)
