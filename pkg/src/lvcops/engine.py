"""Game semantics for limited-visibility pursuit on a graph.

One round is: cops move (each along an edge or passing), then an
observation; the evader moves, then a second observation.  An observation
reveals the evader exactly when some cop is within the visibility radius.
Between sightings the cops' knowledge is a territory: the set of vertices
consistent with every observation so far.  The adversary's consistent
choices at each half-round are grouped into branches; all unseen choices
collapse into a single territory branch, while each seen choice is its own
branch.

Conventions baked into the transition relation:
  - the evader never moves onto a cop, and passing is always legal;
  - a territory vertex whose every move is blocked is a capture;
  - capture and sighting are evaluated after the complete cop half-move;
  - under the weakly monotone rule, the unseen territory recorded after
    each cop half-move may never gain a vertex while the evader is unseen;
    sighted play is exempt, and an escape back out of sight starts a fresh
    baseline at the next cop move.

The time-delayed variant replaces live observations with end-of-round
disclosure of the evader's previous vertex; its knowledge set is kept in a
separate phase so the two information models cannot be mixed up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Protocol

from .graphs import Graph, VertexSet, bits, mask_of


class Variant(Enum):
    SEE = "see"
    CAPTURE = "capture"
    MONOTONE_CAPTURE = "monotone_capture"
    TIME_DELAYED = "time_delayed"
    CLASSICAL = "classical"
    ZERO_VIS = "zero_vis"


# variants that end the game at first sighting
_SEE_GOAL = frozenset({Variant.SEE})
# variants where the live-observation machinery applies at all
_DELAYED = frozenset({Variant.TIME_DELAYED})


@dataclass(frozen=True)
class GameSpec:
    """Visibility radius, cop count, and rule variant.

    The classical game is the capture game with the radius stretched to the
    graph's diameter; the blind game is the capture game at radius zero.
    Both are normalized away by resolve() so downstream code only ever sees
    SEE, CAPTURE, MONOTONE_CAPTURE, or TIME_DELAYED.
    """

    ell: int
    cops: int
    variant: Variant = Variant.CAPTURE

    def __post_init__(self) -> None:
        if self.cops < 1:
            raise ValueError("need at least one cop")
        if self.ell < 0:
            raise ValueError("visibility radius must be nonnegative")

    def resolve(self, g: Graph) -> "GameSpec":
        if self.variant is Variant.CLASSICAL:
            ecc = max(max(row) for row in g.dist)
            return GameSpec(ecc, self.cops, Variant.CAPTURE)
        if self.variant is Variant.ZERO_VIS:
            return GameSpec(0, self.cops, Variant.CAPTURE)
        return self

    @property
    def see_goal(self) -> bool:
        return self.variant in _SEE_GOAL

    @property
    def delayed(self) -> bool:
        return self.variant in _DELAYED

    @property
    def monotone(self) -> bool:
        return self.variant is Variant.MONOTONE_CAPTURE


# snapshot sentinel: no baseline constraint on the next cop move
SNAP_FREE = -1


class Invisible:
    __slots__ = ("territory",)

    def __init__(self, territory: VertexSet) -> None:
        self.territory = territory

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Invisible) and other.territory == self.territory

    def __hash__(self) -> int:
        return hash(("I", self.territory))

    def __repr__(self) -> str:
        return f"Invisible({sorted(bits(self.territory))})"


class Visible:
    __slots__ = ("robber",)

    def __init__(self, robber: int) -> None:
        self.robber = robber

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Visible) and other.robber == self.robber

    def __hash__(self) -> int:
        return hash(("V", self.robber))

    def __repr__(self) -> str:
        return f"Visible({self.robber})"


class Delayed:
    __slots__ = ("belief",)

    def __init__(self, belief: VertexSet) -> None:
        self.belief = belief

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Delayed) and other.belief == self.belief

    def __hash__(self) -> int:
        return hash(("D", self.belief))

    def __repr__(self) -> str:
        return f"Delayed({sorted(bits(self.belief))})"


Phase = Invisible | Visible | Delayed


@dataclass(frozen=True)
class BeliefState:
    """Canonical game position from the cops' point of view.

    cops is sorted (cops are interchangeable and may share a vertex).  An
    Invisible territory is already reduced by every past observation, so it
    is disjoint from the cops' visibility balls.  snapshot carries the
    weakly-monotone baseline (the unseen territory recorded after the last
    cop half-move); SNAP_FREE means the next cop move sets a new baseline.
    """

    cops: tuple[int, ...]
    phase: Phase
    snapshot: int = SNAP_FREE

    def key(self) -> tuple:
        p = self.phase
        if isinstance(p, Invisible):
            tag, payload = 0, p.territory
        elif isinstance(p, Visible):
            tag, payload = 1, p.robber
        else:
            tag, payload = 2, p.belief
        return (self.cops, tag, payload, self.snapshot)


@dataclass(frozen=True)
class Branch:
    """One adversary-consistent continuation: either a terminal cop win or
    a successor state."""

    state: BeliefState | None
    won: bool
    why: str = ""


@dataclass(frozen=True)
class BranchSet:
    branches: tuple[Branch, ...]

    @property
    def vacuous_win(self) -> bool:
        return not self.branches

    @property
    def all_won(self) -> bool:
        return all(b.won for b in self.branches)

    def ongoing(self) -> list[BeliefState]:
        return [b.state for b in self.branches if not b.won]


class IllegalMove(ValueError):
    pass


class MonotonicityViolation(IllegalMove):
    """Cop move rejected because the post-move unseen territory would grow."""


def _ball_union(balls, cops: Iterable[int]) -> VertexSet:
    m = 0
    for c in cops:
        m |= balls[c]
    return m


def _check_cop_step(g: Graph, old: tuple[int, ...], new: tuple[int, ...]) -> None:
    """new must be a per-cop rearrangement of old with each cop passing or
    crossing one edge.  Both tuples are sorted; match greedily over
    permutations via bipartite check."""
    if len(old) != len(new):
        raise IllegalMove("cop count changed")
    # backtracking match; cop counts are tiny
    used = [False] * len(old)

    def assign(i: int) -> bool:
        if i == len(new):
            return True
        for j, o in enumerate(old):
            if not used[j] and (g.adj_closed[o] >> new[i]) & 1:
                used[j] = True
                if assign(i + 1):
                    return True
                used[j] = False
        return False

    if not assign(0):
        raise IllegalMove(f"no legal per-cop matching from {old} to {new}")


def initial_branches(g: Graph, spec: GameSpec, placement: Iterable[int]) -> BranchSet:
    """Adversary replies to the cops' opening placement.

    The evader picks any vertex off the cops.  Seen picks become Visible
    branches (terminal under a seeing goal); unseen picks collapse into one
    territory branch.  The time-delayed game starts from total ignorance.
    """
    spec = spec.resolve(g)
    cops = tuple(sorted(placement))
    if len(cops) != spec.cops:
        raise IllegalMove(f"expected {spec.cops} cops, got {len(cops)}")
    copmask = mask_of(cops)
    free = g.full & ~copmask
    if free == 0:
        return BranchSet(())
    if spec.delayed:
        return BranchSet((Branch(BeliefState(cops, Delayed(free)), False),))
    ball = _ball_union(g.balls(spec.ell), cops)
    seen = free & ball
    unseen = free & ~ball
    out: list[Branch] = []
    for v in bits(seen):
        if spec.see_goal:
            out.append(Branch(None, True, "seen"))
        else:
            out.append(Branch(BeliefState(cops, Visible(v)), False))
    if unseen:
        snap = unseen if spec.monotone else SNAP_FREE
        out.append(Branch(BeliefState(cops, Invisible(unseen), snap), False))
    return BranchSet(tuple(out))


def cop_turn(g: Graph, spec: GameSpec, state: BeliefState, new_cops: Iterable[int]) -> BranchSet:
    """Half-round: cops move, then the observation.  Returned states are
    mid-round (evader still to move); pass them to robber_turn."""
    spec = spec.resolve(g)
    cops = tuple(sorted(new_cops))
    _check_cop_step(g, state.cops, cops)
    copmask = mask_of(cops)
    p = state.phase

    if isinstance(p, Visible):
        if (copmask >> p.robber) & 1:
            return BranchSet((Branch(None, True, "captured"),))
        return BranchSet((Branch(BeliefState(cops, Visible(p.robber)), False),))

    if isinstance(p, Delayed):
        survivors = p.belief & ~copmask
        out: list[Branch] = []
        if p.belief & copmask:
            out.append(Branch(None, True, "captured"))
        if survivors:
            out.append(Branch(BeliefState(cops, Delayed(survivors)), False))
        return BranchSet(tuple(out))

    ball = _ball_union(g.balls(spec.ell), cops)
    captured = p.territory & copmask
    rest = p.territory & ~copmask
    seen = rest & ball
    unseen = rest & ~ball
    if spec.monotone and state.snapshot != SNAP_FREE and unseen & ~state.snapshot:
        raise MonotonicityViolation(
            f"unseen territory would gain {sorted(bits(unseen & ~state.snapshot))}"
        )
    out = []
    if captured:
        out.append(Branch(None, True, "captured"))
    for v in bits(seen):
        if spec.see_goal:
            out.append(Branch(None, True, "seen"))
        else:
            out.append(Branch(BeliefState(cops, Visible(v)), False))
    if unseen:
        snap = unseen if spec.monotone else SNAP_FREE
        out.append(Branch(BeliefState(cops, Invisible(unseen), snap), False))
    return BranchSet(tuple(out))


def robber_turn(g: Graph, spec: GameSpec, state: BeliefState) -> BranchSet:
    """Half-round: evader moves from a post-cop-move state, then the second
    observation."""
    spec = spec.resolve(g)
    cops = state.cops
    copmask = mask_of(cops)
    p = state.phase

    if isinstance(p, Delayed):
        out = []
        seen_beliefs = set()
        for v in bits(p.belief):
            nxt = g.adj_closed[v] & ~copmask
            if nxt not in seen_beliefs:
                seen_beliefs.add(nxt)
                out.append(Branch(BeliefState(cops, Delayed(nxt)), False))
        return BranchSet(tuple(out))

    ball = _ball_union(g.balls(spec.ell), cops)

    if isinstance(p, Visible):
        choices = g.adj_closed[p.robber] & ~copmask
        if choices == 0:
            return BranchSet((Branch(None, True, "cornered"),))
        out = []
        for v in bits(choices & ball):
            if spec.see_goal:
                out.append(Branch(None, True, "seen"))
            else:
                out.append(Branch(BeliefState(cops, Visible(v)), False))
        escape = choices & ~ball
        if escape:
            out.append(Branch(BeliefState(cops, Invisible(escape)), False))
        return BranchSet(tuple(out))

    grown = g.grow(p.territory) & ~copmask
    if grown == 0:
        return BranchSet((Branch(None, True, "cornered"),))
    out = []
    for v in bits(grown & ball):
        if spec.see_goal:
            out.append(Branch(None, True, "seen"))
        else:
            out.append(Branch(BeliefState(cops, Visible(v)), False))
    unseen = grown & ~ball
    if unseen:
        out.append(Branch(BeliefState(cops, Invisible(unseen), state.snapshot), False))
    return BranchSet(tuple(out))


def round_branches(
    g: Graph, spec: GameSpec, state: BeliefState, new_cops: Iterable[int]
) -> BranchSet:
    """Full round: cop half-move composed with every evader reply."""
    mid = cop_turn(g, spec, state, new_cops)
    out: list[Branch] = []
    for b in mid.branches:
        if b.won:
            out.append(b)
        else:
            out.extend(robber_turn(g, spec, b.state).branches)
    return BranchSet(tuple(out))


# -- scripted sweeps ----------------------------------------------------------------


class ScriptError(ValueError):
    pass


@dataclass(frozen=True)
class Script:
    """Per-cop vertex walks of a common length; entry 0 is the placement.
    Consecutive entries must be equal or adjacent."""

    walks: tuple[tuple[int, ...], ...]

    @property
    def cops(self) -> int:
        return len(self.walks)

    @property
    def rounds(self) -> int:
        return len(self.walks[0]) - 1

    def validate(self, g: Graph) -> None:
        if not self.walks:
            raise ScriptError("script needs at least one cop")
        length = len(self.walks[0])
        if length < 1:
            raise ScriptError("walks must contain the placement entry")
        for w in self.walks:
            if len(w) != length:
                raise ScriptError("walks must share a common length")
            for v in w:
                if not 0 <= v < g.n:
                    raise ScriptError(f"vertex {v} out of range")
            for a, b in zip(w, w[1:]):
                if a != b and not (g.adj[a] >> b) & 1:
                    raise ScriptError(f"step {a}->{b} is not an edge")

    def positions(self, k: int) -> tuple[int, ...]:
        return tuple(sorted(w[k] for w in self.walks))


def dump_script(script: Script) -> str:
    return "\n".join(" ".join(str(v) for v in w) for w in script.walks) + "\n"


def load_script(text: str) -> Script:
    rows = []
    for ln in text.strip().splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        rows.append(tuple(int(x) for x in ln.split()))
    if not rows:
        raise ScriptError("empty script")
    return Script(tuple(rows))


@dataclass(frozen=True)
class CleaningReport:
    """Worst-case territory evolution under a script.

    snapshots[k] is the unseen territory right after the cops' k-th move
    (k=0 is the placement).  seen_guaranteed_at is the first round with no
    unseen vertex left: from then on the evader has certainly been seen.
    cleaned_at additionally demands that every sighting is convertible to a
    capture, which holds outright when nothing was ever merely seen, and on
    graphs with a simplicial elimination ordering; otherwise it is None.
    """

    rounds: int
    snapshots: tuple[VertexSet, ...]
    seen_events: tuple[tuple[int, int], ...]
    captured_events: tuple[tuple[int, int], ...]
    recontaminations: tuple[tuple[int, int], ...]
    located: tuple[tuple[int, int], ...]
    seen_guaranteed_at: int | None
    cleaned_at: int | None
    monotone: bool

    def to_dict(self) -> dict:
        return {
            "rounds": self.rounds,
            "territory_per_round": [sorted(bits(s)) for s in self.snapshots],
            "seen": [list(e) for e in self.seen_events],
            "captured": [list(e) for e in self.captured_events],
            "recontaminated": [list(e) for e in self.recontaminations],
            "located": [list(e) for e in self.located],
            "seen_guaranteed_at": self.seen_guaranteed_at,
            "cleaned_at": self.cleaned_at,
            "monotone": self.monotone,
        }


def simulate_script(g: Graph, spec: GameSpec, script: Script) -> CleaningReport:
    """Run the script against the worst case: keep the unseen-territory
    branch alive and log every sighting instead of chasing it.

    The returned report certifies seeing bounds.  Sighted branches are left
    to the strategy layer (on a graph where sight converts to capture the
    same cop count finishes the job, and cleaned_at says so).
    """
    spec = spec.resolve(g)
    script.validate(g)
    if script.cops != spec.cops:
        raise ScriptError(f"spec wants {spec.cops} cops, script has {script.cops}")
    from .graphs import is_chordal

    balls = g.balls(spec.ell)
    cops = script.positions(0)
    copmask = mask_of(cops)
    ball = _ball_union(balls, cops)
    territory = g.full & ~copmask & ~ball

    snapshots = [territory]
    seen_events: list[tuple[int, int]] = []
    captured_events: list[tuple[int, int]] = []
    recont: list[tuple[int, int]] = []
    located: list[tuple[int, int]] = []
    any_seen_start = g.full & ~copmask & ball
    for v in bits(any_seen_start):
        seen_events.append((0, v))
    if territory.bit_count() == 1:
        located.append((0, territory.bit_length() - 1))
    empty_at = 0 if territory == 0 else None

    for k in range(1, script.rounds + 1):
        # cop half of round k
        cops = script.positions(k)
        copmask = mask_of(cops)
        ball = _ball_union(balls, cops)
        for v in bits(territory & copmask):
            captured_events.append((k, v))
        territory &= ~copmask
        for v in bits(territory & ball):
            seen_events.append((k, v))
        territory &= ~ball
        regrown = territory & ~snapshots[-1]
        if regrown and spec.monotone:
            raise MonotonicityViolation(
                f"round {k} readmits {sorted(bits(regrown))}"
            )
        for v in bits(regrown):
            recont.append((k, v))
        snapshots.append(territory)
        if territory.bit_count() == 1 and snapshots[-2].bit_count() != 1:
            located.append((k, territory.bit_length() - 1))
        if empty_at is None and territory == 0:
            empty_at = k
        # evader half of round k; landing beside the cops is observed at once,
        # so a nonempty post-cop set can never empty here
        territory = g.grow(territory) & ~copmask
        for v in bits(territory & ball):
            seen_events.append((k, v))
        territory &= ~ball

    monotone = not recont
    if empty_at is not None and (not seen_events or is_chordal(g)):
        cleaned = empty_at
    else:
        cleaned = None
    return CleaningReport(
        rounds=script.rounds,
        snapshots=tuple(snapshots),
        seen_events=tuple(seen_events),
        captured_events=tuple(captured_events),
        recontaminations=tuple(recont),
        located=tuple(located),
        seen_guaranteed_at=empty_at,
        cleaned_at=cleaned,
        monotone=monotone,
    )


# -- policy playout -------------------------------------------------------------------


class CopPolicy(Protocol):
    def place(self, g: Graph, spec: GameSpec) -> tuple[int, ...]: ...

    def move(self, g: Graph, spec: GameSpec, state: BeliefState) -> tuple[int, ...]: ...


class RobberPolicy(Protocol):
    def place(self, g: Graph, spec: GameSpec, cops: tuple[int, ...]) -> int | None: ...

    def move(
        self, g: Graph, spec: GameSpec, state: BeliefState, robber: int
    ) -> int: ...


class Outcome(Enum):
    CAPTURED = "captured"
    SEEN = "seen"
    TIMEOUT = "timeout"


@dataclass
class Trace:
    outcome: Outcome
    rounds: int
    history: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "rounds": self.rounds,
            "history": self.history,
        }


def _observe(spec: GameSpec, g: Graph, cops: tuple[int, ...], robber: int) -> bool:
    ball = _ball_union(g.balls(spec.ell), cops)
    return bool((ball >> robber) & 1)


def play_match(
    g: Graph,
    spec: GameSpec,
    cop_policy: CopPolicy,
    robber_policy: RobberPolicy,
    max_rounds: int = 200,
) -> Trace:
    """Referee a full game between two policies.

    The cop policy sees only the belief state (its legitimate information);
    the evader policy sees everything.  The belief state is updated by the
    same transition rules the solver searches, with the branch realized by
    the evader's actual choice.
    """
    spec = spec.resolve(g)
    cops = tuple(sorted(cop_policy.place(g, spec)))
    if len(cops) != spec.cops:
        raise IllegalMove("cop placement has wrong size")
    robber = robber_policy.place(g, spec, cops)
    trace = Trace(Outcome.TIMEOUT, 0)
    if robber is None:
        trace.outcome = Outcome.CAPTURED  # nowhere to stand
        return trace
    if (mask_of(cops) >> robber) & 1:
        raise IllegalMove("evader placed on a cop")

    copmask = mask_of(cops)
    if spec.delayed:
        state = BeliefState(cops, Delayed(g.full & ~copmask))
    elif _observe(spec, g, cops, robber):
        if spec.see_goal:
            trace.outcome = Outcome.SEEN
            return trace
        state = BeliefState(cops, Visible(robber))
    else:
        ball = _ball_union(g.balls(spec.ell), cops)
        t0 = g.full & ~copmask & ~ball
        state = BeliefState(cops, Invisible(t0), t0 if spec.monotone else SNAP_FREE)

    for rnd in range(1, max_rounds + 1):
        trace.rounds = rnd
        new_cops = tuple(sorted(cop_policy.move(g, spec, state)))
        mid = cop_turn(g, spec, state, new_cops)
        entry = {"round": rnd, "cops": list(new_cops), "robber": robber}
        trace.history.append(entry)
        if (mask_of(new_cops) >> robber) & 1:
            trace.outcome = Outcome.CAPTURED
            return trace
        seen_now = not spec.delayed and _observe(spec, g, new_cops, robber)
        entry["seen_after_cops"] = seen_now
        if seen_now and spec.see_goal:
            trace.outcome = Outcome.SEEN
            return trace
        state = _realize(g, spec, mid, robber)

        nxt = robber_policy.move(g, spec, state, robber)
        if nxt not in list(bits(g.adj_closed[robber] & ~mask_of(new_cops))):
            raise IllegalMove(f"evader move {robber}->{nxt} illegal")
        prev = robber
        robber = nxt
        entry["robber_to"] = robber
        seen_now = not spec.delayed and _observe(spec, g, new_cops, robber)
        entry["seen_after_robber"] = seen_now
        if seen_now and spec.see_goal:
            trace.outcome = Outcome.SEEN
            return trace
        after = robber_turn(g, spec, state)
        state = _realize(g, spec, after, robber, delayed_prev=prev)
    return trace


def _realize(
    g: Graph,
    spec: GameSpec,
    branches: BranchSet,
    robber: int,
    delayed_prev: int | None = None,
) -> BeliefState:
    """Pick the branch consistent with the evader's true position.

    Matching is structural: a Visible branch persists through the cops'
    half-move even when their balls no longer cover the evader, because the
    evader has not moved since it was pinpointed.
    """
    for b in branches.branches:
        if b.won:
            continue
        p = b.state.phase
        if spec.delayed:
            if delayed_prev is None:
                return b.state  # cop half keeps a single belief branch
            if isinstance(p, Delayed) and p.belief == g.adj_closed[delayed_prev] & ~mask_of(b.state.cops):
                return b.state
        elif isinstance(p, Visible) and p.robber == robber:
            return b.state
        elif isinstance(p, Invisible) and (p.territory >> robber) & 1:
            return b.state
    raise AssertionError("no branch consistent with the evader's position")


# -- convenience policies ---------------------------------------------------------


@dataclass
class ScriptedCops:
    """Replay a script as a cop policy (ignores observations)."""

    script: Script
    _round: int = 0

    def place(self, g: Graph, spec: GameSpec) -> tuple[int, ...]:
        self._round = 0
        return self.script.positions(0)

    def move(self, g: Graph, spec: GameSpec, state: BeliefState) -> tuple[int, ...]:
        self._round = min(self._round + 1, self.script.rounds)
        return self.script.positions(self._round)


@dataclass
class RandomRobber:
    """Seeded random evader; places as far from the cops as possible."""

    seed: int = 0

    def __post_init__(self) -> None:
        import random

        self._rng = random.Random(self.seed)

    def place(self, g: Graph, spec: GameSpec, cops: tuple[int, ...]) -> int | None:
        free = [v for v in range(g.n) if v not in cops]
        if not free:
            return None
        far = max(min(g.dist[c][v] for c in cops) for v in free)
        pool = [v for v in free if min(g.dist[c][v] for c in cops) == far]
        return self._rng.choice(pool)

    def move(self, g: Graph, spec: GameSpec, state: BeliefState, robber: int) -> int:
        moves = list(bits(g.adj_closed[robber] & ~mask_of(state.cops)))
        return self._rng.choice(moves)
