"""Monte-Carlo trial runner and op/space measurement.

Each trial draws a fresh planted stream and a fresh algorithm state from
per-trial sub-seeds, replays the stream, and compares every query answer
against the ground truth.  One-sided violations are structural, never
statistical: a returned matching must be a genuine k-matching of the live
graph (edges present, weights consistent with the mode, endpoints
disjoint), and nothing may be returned when the live graph has no
k-matching.

The whole run is a pure function of (config, trials, seed).  Trials are
fully independent (own stream, own state, own sub-seeds), so they could
run in parallel; this implementation runs them sequentially.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .dynamic import DynamicMatcher, EdgeUpdate
from .errors import ParameterError
from .exact import solve_exact
from .insertonly import insert_preprocess, insert_query, task_budget, window_length
from .seeds import derive_seed, spawn_rng
from .streams import GraphReplay, StreamFile, gen_planted

MODELS = ("dynamic", "dynamic-approx", "insert")


@dataclass(frozen=True)
class TrialConfig:
    model: str
    n: int
    k: int
    weights: int
    m: int
    del_rate: float = 0.0
    eps: float | None = None
    delta: float = 0.5
    feasible: bool = True

    def __post_init__(self):
        if self.model not in MODELS:
            raise ParameterError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.model == "dynamic-approx" and self.eps is None:
            raise ParameterError("dynamic-approx needs eps")


@dataclass
class TrialReport:
    trials: int = 0
    queries: int = 0
    with_matching: int = 0
    returned: int = 0
    successes: int = 0
    within_eps: int = 0
    one_sided_violations: int = 0
    sampler_sampled: int = 0
    sampler_empty: int = 0
    sampler_failed: int = 0
    max_bank_size: int = 0
    max_update_ops: int = 0
    max_stored_edges: int = 0
    distinct_weight_classes: int = 0
    violations: list = field(default_factory=list)


def _true_weight(answer, replay: GraphReplay):
    return sum(replay.live[(u, v)] for u, v, _w in answer.edges)


def _answer_is_sound(answer, k: int, replay: GraphReplay, mode: str) -> bool:
    """Structural one-sided check of a returned matching against the live graph."""
    if len(answer.edges) != k:
        return False
    seen: set[int] = set()
    for u, v, w in answer.edges:
        if u in seen or v in seen:
            return False
        seen.add(u)
        seen.add(v)
        true_w = replay.live.get((u, v))
        if true_w is None:
            return False
        if mode == "exact" and w != true_w:
            return False
        if mode == "approx" and Fraction(true_w) > w:
            return False
    return True


def _run_stream(model: str, config: TrialConfig, sf: StreamFile, opt, algo_rng, report: TrialReport):
    replay = GraphReplay()
    if model == "insert":
        state = insert_preprocess(config.n, config.k, config.delta, algo_rng)
    else:
        mode = "approx" if model == "dynamic-approx" else "exact"
        state = DynamicMatcher(config.n, config.k, algo_rng, mode=mode, eps=config.eps)

    for record in sf.records:
        if record[0] == "Q":
            report.queries += 1
            _evaluate_query(model, config, state, replay, opt, report)
            continue
        replay.apply(record)
        if model == "insert":
            for copy in state:
                copy.update((record[1], record[2], record[3]))
                if copy.max_update_ops > report.max_update_ops:
                    report.max_update_ops = copy.max_update_ops
                if copy.max_stored_edges > report.max_stored_edges:
                    report.max_stored_edges = copy.max_stored_edges
        else:
            state.update(EdgeUpdate(record[1], record[2], record[3], record[0] == "I"))
            if len(state.bank) > report.max_bank_size:
                report.max_bank_size = len(state.bank)
            if len(state.wclasses) > report.distinct_weight_classes:
                report.distinct_weight_classes = len(state.wclasses)


def _evaluate_query(model, config, state, replay, opt, report: TrialReport):
    if model == "insert":
        answer = insert_query(state, config.k)
        mode = "exact"
    else:
        answer = state.query()
        mode = state.mode
        stats = state.last_query_stats
        report.sampler_sampled += stats.sampled
        report.sampler_empty += stats.empty
        report.sampler_failed += stats.failed

    has_matching = opt is not None
    if has_matching:
        report.with_matching += 1

    if answer is None:
        return

    report.returned += 1
    if not _answer_is_sound(answer, config.k, replay, mode):
        report.one_sided_violations += 1
        report.violations.append(("unsound answer", answer.edges))
        return
    if not has_matching:
        # Structural soundness above would have caught any fabrication,
        # so reaching this line means OPT was miscomputed.
        report.one_sided_violations += 1
        report.violations.append(("matching returned on infeasible stream", answer.edges))
        return

    true_w = _true_weight(answer, replay)
    if true_w > opt:
        report.one_sided_violations += 1
        report.violations.append(("answer beats ground truth", answer.edges))
        return
    if mode == "approx":
        if config.eps is not None and Fraction(true_w) > (1 - Fraction(str(config.eps))) * opt:
            report.within_eps += 1
        if true_w == opt:
            report.successes += 1
    else:
        if answer.weight == opt:
            report.successes += 1


def run_trials(config: TrialConfig, trials: int, seed: int) -> TrialReport:
    """Seeded, reproducible Monte-Carlo run; see the module docstring."""
    report = TrialReport()
    for t in range(trials):
        sf, opt = gen_planted(
            config.n, config.k, config.weights, config.m, config.del_rate,
            derive_seed(seed, "trial", t, "stream"),
            model="insert" if config.model == "insert" else "dynamic",
            feasible=config.feasible,
        )
        algo_rng = spawn_rng(seed, "trial", t, "algo")
        _run_stream(config.model, config, sf, opt, algo_rng, report)
        report.trials += 1
    return report


def measure(config: TrialConfig, lengths: tuple[int, ...], seed: int) -> dict:
    """Per-update op and space profile across stream lengths.

    Space is reported in abstract words (counters, ids, coefficients), not
    process bytes: the dynamic bank is charged at the full l0-sampler
    construction it is equivalent to.
    """
    from .dynamic import abstract_sampler_words

    profile: dict = {"model": config.model, "k": config.k, "per_length": {}}
    for m in lengths:
        cfg_seed = derive_seed(seed, "measure", m)
        n = max(config.n, 2 * config.k)
        while n * (n - 1) // 2 < 2 * m:
            n *= 2
        sf, _opt = gen_planted(n, config.k, config.weights, m, config.del_rate, cfg_seed,
                               model="insert" if config.model == "insert" else "dynamic")
        algo_rng = spawn_rng(seed, "measure", m, "algo")
        entry: dict = {}
        if config.model == "insert":
            copies = insert_preprocess(n, config.k, config.delta, algo_rng)
            q = window_length(config.k)
            max_ops = 0
            max_stored = 0
            for record in sf.records:
                if record[0] == "Q":
                    continue
                for copy in copies:
                    copy.update((record[1], record[2], record[3]))
                step_ops = sum(c.last_update_ops for c in copies)
                if step_ops > max_ops:
                    max_ops = step_ops
                stored = max(c.max_stored_edges for c in copies)
                if stored > max_stored:
                    max_stored = stored
            entry.update(
                max_update_ops=max_ops,
                budget=task_budget(config.k),
                copies=len(copies),
                max_stored_edges_per_copy=max_stored,
                stored_bound_5q=5 * q,
            )
        else:
            mode = "approx" if config.model == "dynamic-approx" else "exact"
            state = DynamicMatcher(n, config.k, algo_rng, mode=mode, eps=config.eps)
            params = state.scheme.params
            touched = set()
            for record in sf.records:
                if record[0] == "Q":
                    continue
                state.update(EdgeUpdate(record[1], record[2], record[3], record[0] == "I"))
                touched.add(state.last_touched)
            pair_count = params.family_size ** 2
            entry.update(
                touched_per_update=sorted(touched),
                pairs_per_update=pair_count,
                bank_size=len(state.bank),
                bank_bound=min(state.updates_applied * pair_count,
                               len(state.wclasses) * params.range_size**2),
                weight_classes=len(state.wclasses),
                abstract_words=len(state.bank) * abstract_sampler_words(state.n_ids, state.delta),
            )
        profile["per_length"][m] = entry
    if config.model == "insert":
        maxima = [profile["per_length"][m]["max_update_ops"] for m in lengths]
        profile["update_ops_ratio"] = max(maxima) / min(maxima) if maxima else 1.0
    return profile
