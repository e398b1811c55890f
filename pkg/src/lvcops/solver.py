"""Exact solving of the pursuit games by retrograde analysis.

The game is an AND-OR reachability game over belief states: the cops pick
an action (OR), then every adversary-consistent branch must already be
winning (AND).  Infinite play is an evader win, so the winning set is the
least fixpoint: seed the states with an action whose branches are all
terminal, then propagate backwards with per-(state, action) unmet-branch
counters.

Layout of a solve:
  1. enumerate every opening placement (sorted multisets) and intern the
     root belief states;
  2. expand the reachable set breadth-first to closure, interning states
     in a fixed discovery order.  Worker parallelism only splits a wave
     into contiguous chunks whose results are merged back in wave order,
     so the discovery order, the state count, and everything derived from
     them are identical for any worker count;
  3. propagate wins wave-synchronously.  A state's wave is the number of
     cop moves needed against the worst adversary; the recorded action is
     the first to complete, under a fixed enumeration order;
  4. the cops win the game iff some placement has every root branch won.

The state budget is a hard cap on interned states.  Hitting it aborts with
winner INCONCLUSIVE and states equal to the cap, never a guessed answer.
The cut happens at a fixed point of the deterministic discovery stream, so
budgeted runs are reproducible too.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, Mapping

from .engine import (
    SNAP_FREE,
    BeliefState,
    Delayed,
    GameSpec,
    Invisible,
    Variant,
    Visible,
    robber_turn,
)
from .graphs import Graph, bits, mask_of

DEFAULT_BUDGET = 1_000_000

_INV, _VIS, _DEL = 0, 1, 2

# (cops, tag, payload, snapshot)
Key = tuple


class Winner(Enum):
    COPS = "cops"
    ROBBER = "robber"
    INCONCLUSIVE = "inconclusive"


class BudgetExceeded(RuntimeError):
    """Raised by the iterating drivers when a solve came back INCONCLUSIVE."""

    def __init__(self, message: str, partial: dict | None = None) -> None:
        super().__init__(message)
        self.partial = partial or {}


class ChainViolation(ValueError):
    """A Profile failed one of its internal inequalities."""


class _Ctx:
    """Per-solve caches: legal move tuples and visibility masks per cop tuple."""

    __slots__ = ("g", "spec", "see", "mono", "delayed", "adjc", "_moves", "_balls")

    def __init__(self, g: Graph, spec: GameSpec) -> None:
        self.g = g
        self.spec = spec
        self.see = spec.see_goal
        self.mono = spec.monotone
        self.delayed = spec.delayed
        self.adjc = g.adj_closed
        self._moves: dict[tuple, tuple] = {}
        self._balls = g.balls(spec.ell)

    def moves(self, cops: tuple[int, ...]):
        """All distinct sorted cop tuples one half-move away, with their
        occupancy and visibility masks, in a fixed enumeration order."""
        hit = self._moves.get(cops)
        if hit is not None:
            return hit
        per_cop = [sorted(bits(self.adjc[c])) for c in cops]
        out = []
        seen = set()
        balls = self._balls
        for combo in itertools.product(*per_cop):
            a = tuple(sorted(combo))
            if a in seen:
                continue
            seen.add(a)
            am = mask_of(a)
            bm = 0
            for c in a:
                bm |= balls[c]
            out.append((a, am, bm))
        out = tuple(out)
        self._moves[cops] = out
        return out

    def placement_masks(self, cops: tuple[int, ...]) -> tuple[int, int]:
        am = mask_of(cops)
        bm = 0
        for c in cops:
            bm |= self._balls[c]
        return am, bm


def _initial_keys(ctx: _Ctx, placement: tuple[int, ...]) -> tuple[Key, ...]:
    """Root states for one opening placement; empty tuple means the
    placement wins outright."""
    g = ctx.g
    am, bm = ctx.placement_masks(placement)
    free = g.full & ~am
    if free == 0:
        return ()
    if ctx.delayed:
        return ((placement, _DEL, free, SNAP_FREE),)
    out = []
    if not ctx.see:
        for v in bits(free & bm):
            out.append((placement, _VIS, v, SNAP_FREE))
    unseen = free & ~bm
    if unseen:
        snap = unseen if ctx.mono else SNAP_FREE
        out.append((placement, _INV, unseen, snap))
    return tuple(out)


def _expand(ctx: _Ctx, key: Key) -> list[tuple[tuple[int, ...], tuple[Key, ...]]]:
    """One full round from a cop-to-move state.

    Returns (action, successor keys) per legal action, deduplicated by
    successor set, first-encountered action kept.  An empty successor
    tuple means the action wins on the spot (every branch terminal).
    Monotonicity-violating actions are omitted entirely.
    """
    cops, tag, payload, snap = key
    g = ctx.g
    adjc = ctx.adjc
    out: list[tuple[tuple[int, ...], tuple[Key, ...]]] = []
    seen_sets: set[tuple[Key, ...]] = set()

    if tag == _DEL:
        B = payload
        for a, am, _bm in ctx.moves(cops):
            surv = B & ~am
            if surv == 0:
                succs: tuple[Key, ...] = ()
            else:
                ss = {(a, _DEL, adjc[v] & ~am, SNAP_FREE) for v in bits(surv)}
                succs = tuple(sorted(ss))
            if succs not in seen_sets:
                seen_sets.add(succs)
                out.append((a, succs))
        return out

    if tag == _VIS:
        r = payload
        for a, am, bm in ctx.moves(cops):
            if (am >> r) & 1:
                succs = ()
            else:
                choices = adjc[r] & ~am
                ss = set()
                if not ctx.see:
                    for w in bits(choices & bm):
                        ss.add((a, _VIS, w, SNAP_FREE))
                esc = choices & ~bm
                if esc:
                    ss.add((a, _INV, esc, SNAP_FREE))
                succs = tuple(sorted(ss))
            if succs not in seen_sets:
                seen_sets.add(succs)
                out.append((a, succs))
        return out

    T = payload
    for a, am, bm in ctx.moves(cops):
        rest = T & ~am
        unseen = rest & ~bm
        if ctx.mono and snap != SNAP_FREE and unseen & ~snap:
            continue
        nsnap = unseen if ctx.mono else SNAP_FREE
        ss = set()
        if not ctx.see:
            for v in bits(rest & bm):
                ch = adjc[v] & ~am
                for w in bits(ch & bm):
                    ss.add((a, _VIS, w, SNAP_FREE))
                esc = ch & ~bm
                if esc:
                    ss.add((a, _INV, esc, SNAP_FREE))
        if unseen:
            grown = g.grow(unseen) & ~am
            if not ctx.see:
                for w in bits(grown & bm):
                    ss.add((a, _VIS, w, SNAP_FREE))
            u2 = grown & ~bm
            if u2:
                ss.add((a, _INV, u2, nsnap))
        succs = tuple(sorted(ss))
        if succs not in seen_sets:
            seen_sets.add(succs)
            out.append((a, succs))
    return out


def successors(g: Graph, spec: GameSpec, state: BeliefState) -> dict[tuple, tuple]:
    """Per-action successor keys from a cop-to-move state (test hook).

    Monotonicity-violating actions are absent; an empty value means the
    action ends the game.  Actions collapsing to an already-listed
    successor set are folded into the first action with that set.
    """
    spec = spec.resolve(g)
    ctx = _Ctx(g, spec)
    return {a: succs for a, succs in _expand(ctx, state.key())}


@dataclass(frozen=True)
class SolveOutcome:
    """Result of one fixed-cop-count solve.

    states counts distinct interned belief states; wave_sizes are the
    expansion frontier sizes; depth is the optimal worst-case number of
    cop moves (the chosen placement attains it; 0 means the placement
    covers the graph).  policy maps
    winning state keys to the recorded first-completing action and is set
    iff the cops win; robber_winning holds every non-won state key and is
    set iff the evader wins.
    """

    winner: Winner
    states: int
    wave_sizes: tuple[int, ...]
    depth: int | None
    placement: tuple[int, ...] | None
    policy: Mapping[Key, tuple[int, ...]] | None
    robber_winning: frozenset | None
    waves: dict[Key, int] | None
    graph: Graph
    spec: GameSpec

    def robber_policy(self):
        """Playable adversary policy; only meaningful when the evader wins."""
        return SolvedRobber(self) if self.winner is Winner.ROBBER else None

    def to_public_dict(self) -> dict:
        return {
            "graph": self.graph.key(),
            "ell": self.spec.ell,
            "cops": self.spec.cops,
            "variant": self.spec.variant.value,
            "winner": self.winner.value,
            "states": self.states,
            "depth": self.depth,
            "placement": list(self.placement) if self.placement else None,
        }


class _Budget(Exception):
    pass


def solve(
    g: Graph,
    spec: GameSpec,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    subsumption: bool = False,
) -> SolveOutcome:
    """Decide the game at spec.cops cops; see the module docstring.

    subsumption enables the territory-dominance shortcut: a win at
    (cops, T) also settles every stored (cops, T' subset of T).  It is a
    winner-preserving optimization; recorded depths and policy entries for
    subsumed states borrow the dominating state's action.  Not available
    under the weakly monotone variant, whose snapshots break dominance.
    """
    spec = spec.resolve(g)
    if subsumption and spec.monotone:
        raise ValueError("subsumption shortcut is unsound with monotone snapshots")
    ctx = _Ctx(g, spec)

    index: dict[Key, int] = {}
    keys: list[Key] = []

    def intern(key: Key) -> int:
        i = index.get(key)
        if i is None:
            if len(keys) >= budget:
                raise _Budget()
            i = len(keys)
            index[key] = i
            keys.append(key)
        return i

    placements = list(itertools.combinations_with_replacement(range(g.n), spec.cops))
    placement_roots: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    succ_sets: list[tuple[tuple[int, ...], ...]] = []
    actions: list[tuple[tuple[int, ...], ...]] = []
    wave_sizes: list[int] = []

    def inconclusive() -> SolveOutcome:
        return SolveOutcome(
            Winner.INCONCLUSIVE, budget, tuple(wave_sizes), None, None, None,
            None, None, g, spec,
        )

    try:
        for p in placements:
            placement_roots.append((p, tuple(intern(k) for k in _initial_keys(ctx, p))))
    except _Budget:
        return inconclusive()

    frontier = list(range(len(keys)))
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier:
            wave_sizes.append(len(frontier))
            batch = [keys[i] for i in frontier]
            if pool is None:
                results = [_expand(ctx, k) for k in batch]
            else:
                step = (len(batch) + workers - 1) // workers
                chunks = [batch[i : i + step] for i in range(0, len(batch), step)]
                parts = pool.map(lambda ch: [_expand(ctx, k) for k in ch], chunks)
                results = [r for part in parts for r in part]
            nxt: list[int] = []
            try:
                for per_state in results:
                    acts = []
                    sets = []
                    for a, succ_keys in per_state:
                        row = []
                        for sk in succ_keys:
                            j = index.get(sk)
                            if j is None:
                                j = intern(sk)
                                nxt.append(j)
                            row.append(j)
                        acts.append(a)
                        sets.append(tuple(row))
                    actions.append(tuple(acts))
                    succ_sets.append(tuple(sets))
            except _Budget:
                return inconclusive()
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown(wait=False)

    n_states = len(keys)
    won = bytearray(n_states)
    wave_of = [0] * n_states
    chosen: list[tuple[int, ...] | None] = [None] * n_states
    remaining: list[list[int]] = [[len(s) for s in sets] for sets in succ_sets]
    preds: dict[int, list[tuple[int, int]]] = {}
    for i, sets in enumerate(succ_sets):
        for ai, row in enumerate(sets):
            for j in row:
                preds.setdefault(j, []).append((i, ai))

    current: list[int] = []
    for i, sets in enumerate(succ_sets):
        for ai, row in enumerate(sets):
            if not row:
                won[i] = 1
                wave_of[i] = 1
                chosen[i] = actions[i][ai]
                current.append(i)
                break

    buckets: dict[tuple, list[int]] = {}
    if subsumption:
        for i, key in enumerate(keys):
            if key[1] != _VIS:
                buckets.setdefault((key[0], key[1]), []).append(i)

    wave = 1
    while current:
        nxt = []
        for w in current:
            if subsumption:
                k = keys[w]
                if k[1] != _VIS:
                    for j in buckets[(k[0], k[1])]:
                        if not won[j] and keys[j][2] & ~k[2] == 0:
                            won[j] = 1
                            wave_of[j] = wave
                            chosen[j] = chosen[w]
                            current.append(j)
            for (i, ai) in preds.get(w, ()):
                remaining[i][ai] -= 1
                if remaining[i][ai] == 0 and not won[i]:
                    won[i] = 1
                    wave_of[i] = wave + 1
                    chosen[i] = actions[i][ai]
                    nxt.append(i)
        current = nxt
        wave += 1

    win_placement = None
    depth = None
    for p, roots in placement_roots:
        if all(won[i] for i in roots):
            d = max((wave_of[i] for i in roots), default=0)
            if depth is None or d < depth:
                win_placement, depth = p, d

    losing = frozenset(keys[i] for i in range(n_states) if not won[i])
    waves = {keys[i]: wave_of[i] for i in range(n_states) if won[i]}
    if win_placement is not None:
        policy = {keys[i]: chosen[i] for i in range(n_states) if won[i]}
        return SolveOutcome(
            Winner.COPS, n_states, tuple(wave_sizes), depth, win_placement,
            policy, losing, waves, g, spec,
        )
    return SolveOutcome(
        Winner.ROBBER, n_states, tuple(wave_sizes), None, None, None,
        losing, waves, g, spec,
    )


def cop_number(
    g: Graph,
    ell: int,
    variant: Variant = Variant.CAPTURE,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> int:
    """Smallest cop count winning the game; iterates k = 1, 2, ...

    Termination: a cop on every vertex leaves the evader nowhere to stand,
    so k = n always wins.  An INCONCLUSIVE solve below the answer poisons
    the iteration and raises BudgetExceeded with the partial findings.
    """
    for k in range(1, g.n + 1):
        out = solve(g, GameSpec(ell, k, variant), budget=budget, workers=workers)
        if out.winner is Winner.COPS:
            return k
        if out.winner is Winner.INCONCLUSIVE:
            raise BudgetExceeded(
                f"{variant.value} game at radius {ell} undecided at {k} cops"
                f" within {budget} states",
                partial={"k": k, "states": out.states},
            )
    raise AssertionError("unreachable: full occupation wins")


@dataclass(frozen=True)
class Profile:
    """Game numbers for one graph, cross-checked on construction.

    capture_at/see_at/monotone_at/domination_at are keyed by visibility
    radius.  Entries may be absent (None / missing key) when not requested;
    inequalities are only checked between present values.
    """

    graph_key: str
    n: int
    radii: tuple[int, ...]
    classical: int | None = None
    blind: int | None = None
    delayed: int | None = None
    domination: int | None = None
    capture_at: dict[int, int] | None = None
    see_at: dict[int, int] | None = None
    monotone_at: dict[int, int] | None = None
    domination_at: dict[int, int] | None = None

    def __post_init__(self) -> None:
        problems = self.check()
        if problems:
            raise ChainViolation("; ".join(problems))

    def check(self) -> list[str]:
        bad = []
        cap = self.capture_at or {}
        see = self.see_at or {}
        mono = self.monotone_at or {}
        dom = self.domination_at or {}
        for r in self.radii:
            if r in see and r in cap and see[r] > cap[r]:
                bad.append(f"see({r}) > capture({r})")
            if r in see and r in dom and see[r] > dom[r]:
                bad.append(f"see({r}) > domination({r})")
            if r in mono and r in cap and mono[r] < cap[r]:
                bad.append(f"monotone({r}) < capture({r})")
            if self.classical is not None and r in cap and cap[r] < self.classical:
                bad.append(f"capture({r}) < classical")
        radii = sorted(set(cap))
        for r1, r2 in zip(radii, radii[1:]):
            if cap[r1] < cap[r2]:
                bad.append(f"capture({r1}) < capture({r2})")
        if self.blind is not None and radii and cap[radii[0]] > self.blind:
            bad.append("capture chain exceeds the blind game")
        sradii = sorted(set(see))
        for r1, r2 in zip(sradii, sradii[1:]):
            if see[r1] < see[r2]:
                bad.append(f"see({r1}) < see({r2})")
        if (
            self.classical is not None
            and self.delayed is not None
            and self.delayed < self.classical
        ):
            bad.append("delayed < classical")
        return bad

    def as_dict(self) -> dict:
        return {
            "graph": self.graph_key,
            "n": self.n,
            "classical": self.classical,
            "blind": self.blind,
            "delayed": self.delayed,
            "domination": self.domination,
            "capture_at": dict(self.capture_at or {}),
            "see_at": dict(self.see_at or {}),
            "monotone_at": dict(self.monotone_at or {}),
            "domination_at": dict(self.domination_at or {}),
        }


ALL_PARTS = ("classical", "blind", "delayed", "domination", "capture", "see", "monotone")


def profile(
    g: Graph,
    radii: Iterable[int] = (1,),
    *,
    parts: Iterable[str] = ALL_PARTS,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> Profile:
    """Compute the requested game numbers and wrap them in a Profile."""
    from .graphs import k_domination_number

    radii = tuple(sorted(set(radii)))
    parts = frozenset(parts)
    unknown = parts - set(ALL_PARTS)
    if unknown:
        raise ValueError(f"unknown profile parts {sorted(unknown)}")
    kw = {"budget": budget, "workers": workers}
    classical = blind = delayed = domination = None
    capture_at = see_at = monotone_at = domination_at = None
    if "classical" in parts:
        classical = cop_number(g, 0, Variant.CLASSICAL, **kw)
    if "blind" in parts:
        blind = cop_number(g, 0, Variant.CAPTURE, **kw)
    if "delayed" in parts:
        delayed = cop_number(g, 0, Variant.TIME_DELAYED, **kw)
    if "domination" in parts:
        domination = k_domination_number(g, 1)
    if "capture" in parts:
        capture_at = {r: cop_number(g, r, Variant.CAPTURE, **kw) for r in radii}
    if "see" in parts:
        see_at = {r: cop_number(g, r, Variant.SEE, **kw) for r in radii}
    if "monotone" in parts:
        monotone_at = {r: cop_number(g, r, Variant.MONOTONE_CAPTURE, **kw) for r in radii}
    if "see" in parts or "domination" in parts:
        domination_at = {r: k_domination_number(g, r) for r in radii}
    return Profile(
        graph_key=g.key(),
        n=g.n,
        radii=radii,
        classical=classical,
        blind=blind,
        delayed=delayed,
        domination=domination,
        capture_at=capture_at,
        see_at=see_at,
        monotone_at=monotone_at,
        domination_at=domination_at,
    )


@dataclass(frozen=True)
class WitnessResult:
    graph: Graph | None
    profile: Profile | None
    tried: int
    skipped: int


def search_witness(
    predicate: Callable[[Profile], bool],
    candidates: Iterator[Graph],
    *,
    limit: int,
    profiler: Callable[[Graph], Profile | None] | None = None,
    radii: Iterable[int] = (1,),
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> WitnessResult:
    """First candidate whose profile satisfies the predicate.

    The profiler may return None to discard a candidate cheaply, and a
    candidate whose profile blows the solve budget is skipped rather than
    guessed at.  Every drawn candidate counts against the limit.
    """
    if profiler is None:
        profiler = lambda h: profile(h, radii, budget=budget, workers=workers)
    tried = skipped = 0
    for g in candidates:
        if tried >= limit:
            break
        tried += 1
        try:
            prof = profiler(g)
        except BudgetExceeded:
            skipped += 1
            continue
        if prof is None:
            continue
        if predicate(prof):
            return WitnessResult(g, prof, tried, skipped)
    return WitnessResult(None, None, tried, skipped)


# -- playable policies out of a solve -------------------------------------------


class SolvedCops:
    """Plays the recorded winning policy; passes if asked off-table."""

    def __init__(self, outcome: SolveOutcome) -> None:
        if outcome.winner is not Winner.COPS:
            raise ValueError("cop policy requires a cop-winning outcome")
        self._out = outcome

    def place(self, g: Graph, spec: GameSpec) -> tuple[int, ...]:
        return self._out.placement

    def move(self, g: Graph, spec: GameSpec, state: BeliefState) -> tuple[int, ...]:
        act = self._out.policy.get(state.key())
        return act if act is not None else state.cops


class SolvedRobber:
    """Plays adversary branches from the solved tables.

    Branch choice is exact: prefer any branch the cops never win; among
    winning-for-cops branches take the deepest.  The concrete vertex
    inside a territory branch is a heuristic (max distance to the cops),
    which is where belief-level and played-out optimality can part ways.
    """

    def __init__(self, outcome: SolveOutcome) -> None:
        self._out = outcome
        self._safe = outcome.robber_winning or frozenset()
        self._waves = outcome.waves or {}

    def _score(self, key: Key) -> tuple[int, int]:
        # (robber-winning, survival depth): bigger is better
        if key in self._safe:
            return (1, 0)
        return (0, self._waves.get(key, 0))

    def place(self, g: Graph, spec: GameSpec, cops: tuple[int, ...]) -> int | None:
        spec = spec.resolve(g)
        ctx = _Ctx(g, spec)
        roots = _initial_keys(ctx, tuple(sorted(cops)))
        if not roots:
            free = g.full & ~mask_of(cops)
            return max(bits(free), default=None)
        best_key = max(roots, key=lambda k: (self._score(k), -k[1]))
        return self._pick_vertex(g, cops, best_key)

    def move(self, g: Graph, spec: GameSpec, state: BeliefState, robber: int) -> int:
        spec = spec.resolve(g)
        cops = state.cops
        am = mask_of(cops)
        choices = list(bits(g.adj_closed[robber] & ~am))
        far = lambda w: min(g.dist[c][w] for c in cops)
        if isinstance(state.phase, Delayed):
            # disclosure reveals the pre-move vertex, so every choice lands
            # in the same belief branch; just keep the distance
            return max(choices, key=lambda w: (far(w), -w))
        landing: dict[int, Key] = {}
        for b in robber_turn(g, spec, state).branches:
            if b.won:
                continue
            p = b.state.phase
            if isinstance(p, Visible):
                if p.robber in choices:
                    landing[p.robber] = b.state.key()
            elif isinstance(p, Invisible):
                for w in choices:
                    if (p.territory >> w) & 1:
                        landing[w] = b.state.key()

        def rank(w: int):
            if w not in landing:  # terminal for the evader (seen under SEE)
                return ((-1, 0), far(w), -w)
            return (self._score(landing[w]), far(w), -w)

        return max(choices, key=rank)

    def _pick_vertex(self, g: Graph, cops, key: Key) -> int:
        if key[1] == _VIS:
            return key[2]
        far = lambda w: min(g.dist[c][w] for c in cops)
        return max(bits(key[2]), key=lambda w: (far(w), -w))


def extract_policies(outcome: SolveOutcome) -> tuple:
    """Playable (cop, robber) policy pair for engine.play_match.

    The cop side needs a cop-winning outcome; the robber side plays from
    either decided outcome (optimally prolonging a lost game).
    """
    if outcome.winner is Winner.INCONCLUSIVE:
        raise ValueError("no policies from an inconclusive solve")
    cop = SolvedCops(outcome) if outcome.winner is Winner.COPS else None
    return cop, SolvedRobber(outcome)
