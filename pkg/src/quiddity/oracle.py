"""Exhaustive matrix-product solver for m_n(a_1, ..., a_m) = +/-target.

This module is deliberately independent of the formula and series
pipeline: it multiplies elementary matrices out over candidate tuples
and counts what actually hits the target, so agreement with the census
numbers is a genuine two-route check.

The workhorse is a meet-in-the-middle sweep.  Splitting a tuple into
prefix + suffix gives m_n(tuple) = m_n(suffix) * m_n(prefix), hence

    m_n(tuple) = +/-target  <=>  m_n(prefix) = m_n(suffix)^-1 * (+/-target).

All prefix products are tabulated once as packed integers; each suffix
then costs two dictionary probes per target.  Packing is linear in the
matrix entries, so the probe for -target is just the negated key of
the probe for +target, and a whole batch of targets can share one
prefix table and one suffix sweep.

Completeness depends on the search box: only components in 1..bound
are enumerated (constrained positions may sit above the bound).
bound_touches reports how many solutions have a component at or above
the bound; zero means every solution sits strictly inside the box,
the usual saturation sanity signal.
"""

import multiprocessing
from dataclasses import dataclass

from .matrices import Mat2, TARGETS, equal_up_to_sign, m_n, parse_target

DEFAULT_MAX_TABLE_ENTRIES = 8_000_000

_COUNT_MASK = (1 << 32) - 1
_IDENT = (1, 0, 0, 1)


class ResourceBudgetError(RuntimeError):
    """The requested search box exceeds the configured table budget."""


@dataclass
class OracleQuery:
    """One exhaustive-search request.

    target       named generator, word, matrix literal, or Mat2
    size         tuple length m
    bound        largest component searched (defaults to size)
    constraints  {position: value} with 1-based positions; pinned values
                 may exceed the bound
    method       "auto" (direct product up to size 3, then meet in the
                 middle), "direct", or "mitm"
    """

    target: object
    size: int
    bound: int = None
    constraints: dict = None
    list_solutions: bool = False
    workers: int = 1
    max_table_entries: int = DEFAULT_MAX_TABLE_ENTRIES
    method: str = "auto"
    with_first_last: bool = True


@dataclass
class SolutionSet:
    """Result of one solve: the count plus component histograms.

    by_last maps last component -> count; by_first_last maps the pair
    (first, last) -> count; solutions is a lexicographically sorted
    tuple of component tuples when listing was requested, else None.

    exhaustive_within_bound is True when every solution of the equation
    provably has all free components within the bound, which holds for
    the eight named targets whenever bound >= size; then the count is
    the complete solution count.  When it is False (arbitrary target,
    or a lowered bound) the count is only exhaustive inside the
    searched box and bound_touches is the saturation signal.
    """

    target: Mat2
    target_name: object
    size: int
    bound: int
    count: int
    bound_touches: int
    by_last: dict
    by_first_last: dict
    method: str
    exhaustive_within_bound: bool = False
    solutions: object = None


@dataclass
class SurveyResult:
    """Counts and histograms for a batch of targets at one size.

    All dicts are keyed by target label; exhaustive_within_bound has
    the same meaning as on SolutionSet, per target.
    """

    size: int
    bound: int
    counts: dict
    bound_touches: dict
    by_last: dict
    by_first_last: dict
    exhaustive_within_bound: dict


def _iter_products(lows, highs, bound):
    """Yield (digits, product, touched) over a digit box in ascending order.

    The product is m_n(digits) as an entry 4-tuple, maintained
    incrementally: an odometer step only rebuilds the levels to the
    right of the digit that moved.  touched flags max(digits) >= bound.
    """
    length = len(lows)
    if length == 0:
        yield (), _IDENT, False
        return
    digits = list(lows)
    mats = [None] * length
    prev = _IDENT
    for i in range(length):
        a = digits[i]
        p, q, r, s = prev
        prev = (a * p - r, a * q - s, p, q)
        mats[i] = prev
    while True:
        yield tuple(digits), mats[-1], max(digits) >= bound
        i = length - 1
        while i >= 0 and digits[i] >= highs[i]:
            digits[i] = lows[i]
            i -= 1
        if i < 0:
            return
        digits[i] += 1
        prev = mats[i - 1] if i > 0 else _IDENT
        for j in range(i, length):
            a = digits[j]
            p, q, r, s = prev
            prev = (a * p - r, a * q - s, p, q)
            mats[j] = prev


def _pack_base(m1, m2, dmax, tmax):
    # entries of a product of k elementary factors with digits <= d are
    # bounded by (d+1)^k; lookup keys additionally carry the target
    growth = dmax + 1
    limit = max(growth ** m1, 2 * max(tmax, 1) * growth ** m2)
    return 1 << (limit.bit_length() + 1)


def _target_key_coeffs(entries, base):
    # pack(M * target) is linear in the entries of M; these are the four
    # dot-product coefficients for M given as (a, b, c, d)
    ta, tb, tc, td = entries
    b3 = base ** 3
    b2 = base ** 2
    return (ta * b3 + tb * b2, tc * b3 + td * b2, ta * base + tb, tc * base + td)


def _projected(lows, highs):
    total = 1
    for lo, hi in zip(lows, highs):
        total *= hi - lo + 1
    return total


def _check_budget(projected, budget, label):
    if projected > budget:
        raise ResourceBudgetError(
            f"{label} would enumerate {projected} tuples, over the table budget "
            f"of {budget}; raise max_table_entries or constrain components"
        )


def _normalize_target(spec):
    if isinstance(spec, Mat2):
        mat = spec
    elif isinstance(spec, str):
        mat = parse_target(spec)
    else:
        raise ValueError(f"target must be a Mat2 or a string, got {spec!r}")
    name = None
    if isinstance(spec, str) and spec.strip() in TARGETS:
        name = spec.strip()
    else:
        for key, value in TARGETS.items():
            if value == mat:
                name = key
                break
    return mat, name


def _normalize_constraints(constraints, size):
    fixed = {}
    for pos, value in (constraints or {}).items():
        if not isinstance(pos, int) or isinstance(pos, bool):
            raise ValueError(f"constraint positions must be integers, got {pos!r}")
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"constraint values must be integers, got {value!r}")
        if not 1 <= pos <= size:
            raise ValueError(f"constraint position {pos} outside 1..{size}")
        if value < 1:
            raise ValueError(f"components are positive, cannot pin {value}")
        fixed[pos] = value
    return fixed


def _box(size, bound, fixed):
    lows = [1] * size
    highs = [bound] * size
    for pos, value in fixed.items():
        lows[pos - 1] = highs[pos - 1] = value
    return lows, highs


def _build_prefix_table(lows, highs, bound, base, ann_mult, want_ann):
    """Map pack(prefix product) -> count + (touched count << 32).

    The annotated table additionally keys by the first component so the
    sweep can split rare hits by (first, last) without materializing.
    """
    totals = {}
    ann = {} if want_ann else None
    tget = totals.get
    for digits, mat, touched in _iter_products(lows, highs, bound):
        a, b, c, d = mat
        key = ((a * base + b) * base + c) * base + d
        totals[key] = tget(key, 0) + 1 + (touched << 32)
        if ann is not None:
            akey = key * ann_mult + digits[0]
            ann[akey] = ann.get(akey, 0) + 1
    return totals, ann


def _sweep(totals, ann, coeff_rows, slows, shighs, bound, first_lo, first_hi, ann_mult):
    """Run the suffix sweep against a prebuilt prefix table."""
    n_targets = len(coeff_rows)
    counts = [0] * n_targets
    touches = [0] * n_targets
    by_last = [{} for _ in range(n_targets)]
    by_first_last = [{} for _ in range(n_targets)] if ann is not None else None
    tget = totals.get
    aget = ann.get if ann is not None else None
    indices = range(n_targets)
    for digits, mat, stouched in _iter_products(slows, shighs, bound):
        p, q, r, s = mat
        # inverse of the suffix product (determinant is 1)
        last = digits[-1]
        for ti in indices:
            ca, cb, cc, cd = coeff_rows[ti]
            key = s * ca - q * cb - r * cc + p * cd
            packed = 0
            hit = tget(key)
            if hit is not None:
                packed += hit
            hit = tget(-key)
            if hit is not None:
                packed += hit
            if not packed:
                continue
            cnt = packed & _COUNT_MASK
            counts[ti] += cnt
            touches[ti] += cnt if stouched else packed >> 32
            row = by_last[ti]
            row[last] = row.get(last, 0) + cnt
            if by_first_last is not None:
                pos_key = key * ann_mult
                neg_key = -key * ann_mult
                fl = by_first_last[ti]
                for first in range(first_lo, first_hi + 1):
                    c1 = (aget(pos_key + first) or 0) + (aget(neg_key + first) or 0)
                    if c1:
                        pair = (first, last)
                        fl[pair] = fl.get(pair, 0) + c1
    return counts, touches, by_last, by_first_last


_WORKER_CTX = None


def _prefix_partition_task(first_value):
    lows, highs, bound, base, ann_mult, want_ann = _WORKER_CTX
    lows = list(lows)
    highs = list(highs)
    lows[0] = highs[0] = first_value
    return _build_prefix_table(lows, highs, bound, base, ann_mult, want_ann)


def _sweep_partition_task(first_value):
    totals, ann, coeff_rows, slows, shighs, bound, first_lo, first_hi, ann_mult = _WORKER_CTX
    slows = list(slows)
    shighs = list(shighs)
    slows[0] = shighs[0] = first_value
    return _sweep(totals, ann, coeff_rows, slows, shighs, bound, first_lo, first_hi, ann_mult)


def _run_partitioned(task, lo, hi, workers, ctx):
    """Run task over first-digit partitions lo..hi, results in ascending order.

    Partitions are independent, so with workers > 1 they go to a fork
    pool (children inherit the context, including any prefix table,
    without pickling it); merge order stays ascending either way, which
    keeps results identical for any worker count.
    """
    global _WORKER_CTX
    values = list(range(lo, hi + 1))
    _WORKER_CTX = ctx
    try:
        if workers <= 1 or len(values) == 1:
            return [task(v) for v in values]
        pool_size = min(workers, len(values))
        with multiprocessing.get_context("fork").Pool(pool_size) as pool:
            return pool.map(task, values)
    finally:
        _WORKER_CTX = None


def _merge_tables(parts):
    totals, ann = parts[0]
    for part_totals, part_ann in parts[1:]:
        for key, value in part_totals.items():
            totals[key] = totals.get(key, 0) + value
        if ann is not None:
            for key, value in part_ann.items():
                ann[key] = ann.get(key, 0) + value
    return totals, ann


def _merge_sweeps(parts, n_targets):
    counts = [0] * n_targets
    touches = [0] * n_targets
    by_last = [{} for _ in range(n_targets)]
    by_first_last = [{} for _ in range(n_targets)] if parts[0][3] is not None else None
    for part_counts, part_touches, part_last, part_fl in parts:
        for ti in range(n_targets):
            counts[ti] += part_counts[ti]
            touches[ti] += part_touches[ti]
            row = by_last[ti]
            for key, value in part_last[ti].items():
                row[key] = row.get(key, 0) + value
            if by_first_last is not None:
                fl = by_first_last[ti]
                for key, value in part_fl[ti].items():
                    fl[key] = fl.get(key, 0) + value
    return counts, touches, by_last, by_first_last


def _solve_mitm_counts(target_entries, size, bound, fixed, workers, budget, want_first_last):
    """Count solutions for a batch of targets with one table + one sweep."""
    lows, highs = _box(size, bound, fixed)
    m1 = (size + 1) // 2
    plows, phighs = lows[:m1], highs[:m1]
    slows, shighs = lows[m1:], highs[m1:]
    _check_budget(_projected(plows, phighs), budget, "the prefix table")
    _check_budget(_projected(slows, shighs), budget, "the suffix sweep")
    dmax = max([bound] + list(fixed.values()))
    tmax = max(abs(e) for entries in target_entries for e in entries)
    base = _pack_base(m1, size - m1, dmax, tmax)
    ann_mult = dmax + 2
    first_fixed = plows[0] == phighs[0]
    want_ann = want_first_last and not first_fixed

    ctx = (tuple(plows), tuple(phighs), bound, base, ann_mult, want_ann)
    parts = _run_partitioned(_prefix_partition_task, plows[0], phighs[0], workers, ctx)
    totals, ann = _merge_tables(parts)

    coeff_rows = [_target_key_coeffs(entries, base) for entries in target_entries]
    ctx = (totals, ann, coeff_rows, tuple(slows), tuple(shighs), bound,
           plows[0], phighs[0], ann_mult)
    parts = _run_partitioned(_sweep_partition_task, slows[0], shighs[0], workers, ctx)
    counts, touches, by_last, by_first_last = _merge_sweeps(parts, len(target_entries))

    if want_first_last and first_fixed:
        first = plows[0]
        by_first_last = [
            {(first, last): cnt for last, cnt in row.items()} for row in by_last
        ]
    elif not want_first_last:
        by_first_last = [{} for _ in target_entries]
    return counts, touches, by_last, by_first_last


def _solve_mitm_listing(entries, size, bound, fixed, budget):
    """Materialize all solutions for one target via a prefix multimap."""
    lows, highs = _box(size, bound, fixed)
    m1 = (size + 1) // 2
    plows, phighs = lows[:m1], highs[:m1]
    slows, shighs = lows[m1:], highs[m1:]
    _check_budget(_projected(plows, phighs), budget, "the prefix table")
    _check_budget(_projected(slows, shighs), budget, "the suffix sweep")
    dmax = max([bound] + list(fixed.values()))
    tmax = max(abs(e) for e in entries)
    base = _pack_base(m1, size - m1, dmax, tmax)

    table = {}
    for digits, mat, _touched in _iter_products(plows, phighs, bound):
        a, b, c, d = mat
        key = ((a * base + b) * base + c) * base + d
        table.setdefault(key, []).append(digits)
    ca, cb, cc, cd = _target_key_coeffs(entries, base)
    solutions = []
    empty = ()
    for digits, mat, _touched in _iter_products(slows, shighs, bound):
        p, q, r, s = mat
        key = s * ca - q * cb - r * cc + p * cd
        for probe in (key, -key):
            for prefix in table.get(probe, empty):
                solutions.append(prefix + digits)
    solutions.sort()
    return solutions


def _solve_direct(entries, size, bound, fixed, want_list):
    """Plain full enumeration; the reference the sweep is checked against."""
    negated = tuple(-e for e in entries)
    lows, highs = _box(size, bound, fixed)
    count = 0
    touches = 0
    by_last = {}
    by_first_last = {}
    solutions = [] if want_list else None
    for digits, mat, touched in _iter_products(lows, highs, bound):
        if mat == entries or mat == negated:
            count += 1
            touches += touched
            last = digits[-1]
            by_last[last] = by_last.get(last, 0) + 1
            pair = (digits[0], last)
            by_first_last[pair] = by_first_last.get(pair, 0) + 1
            if solutions is not None:
                solutions.append(digits)
    return count, touches, by_last, by_first_last, solutions


def _histograms_from(solutions, bound):
    count = len(solutions)
    touches = 0
    by_last = {}
    by_first_last = {}
    for digits in solutions:
        if max(digits) >= bound:
            touches += 1
        last = digits[-1]
        by_last[last] = by_last.get(last, 0) + 1
        pair = (digits[0], last)
        by_first_last[pair] = by_first_last.get(pair, 0) + 1
    return count, touches, by_last, by_first_last


def solve(query):
    """Solve one OracleQuery exhaustively; returns a SolutionSet."""
    mat, name = _normalize_target(query.target)
    size = query.size
    if not isinstance(size, int) or isinstance(size, bool) or size < 1:
        raise ValueError(f"size must be a positive integer, got {size!r}")
    bound = size if query.bound is None else query.bound
    if not isinstance(bound, int) or isinstance(bound, bool) or bound < 1:
        raise ValueError(f"bound must be a positive integer, got {bound!r}")
    fixed = _normalize_constraints(query.constraints, size)
    method = query.method
    if method not in ("auto", "direct", "mitm"):
        raise ValueError(f"method must be auto, direct or mitm, got {method!r}")
    if method == "auto":
        method = "direct" if size <= 3 else "mitm"
    if method == "mitm" and size < 2:
        raise ValueError("the meet-in-the-middle route needs size >= 2")
    budget = query.max_table_entries
    entries = mat.entries()

    if method == "direct":
        lows, highs = _box(size, bound, fixed)
        _check_budget(_projected(lows, highs), budget, "direct enumeration")
        count, touches, by_last, by_first_last, listed = _solve_direct(
            entries, size, bound, fixed, query.list_solutions)
    elif query.list_solutions:
        listed = _solve_mitm_listing(entries, size, bound, fixed, budget)
        for digits in listed:
            if not equal_up_to_sign(m_n(digits), mat):
                raise RuntimeError(f"internal error: {digits} fails re-verification")
        count, touches, by_last, by_first_last = _histograms_from(listed, bound)
    else:
        listed = None
        counts, touch_list, last_list, fl_list = _solve_mitm_counts(
            [entries], size, bound, fixed, query.workers, budget,
            query.with_first_last)
        count, touches = counts[0], touch_list[0]
        by_last, by_first_last = last_list[0], fl_list[0]

    return SolutionSet(
        target=mat,
        target_name=name,
        size=size,
        bound=bound,
        count=count,
        bound_touches=touches,
        by_last=by_last,
        by_first_last=by_first_last,
        method=method,
        exhaustive_within_bound=name is not None and bound >= size,
        solutions=tuple(listed) if query.list_solutions else None,
    )


def survey(size, bound=None, workers=1, max_table_entries=DEFAULT_MAX_TABLE_ENTRIES,
           targets=None, with_first_last=True):
    """Count solutions for a whole batch of targets at one size.

    All targets share a single prefix table and a single suffix sweep,
    so surveying the eight named targets costs little more than one.
    """
    if targets is None:
        specs = list(TARGETS)
    else:
        specs = list(targets)
    if not specs:
        raise ValueError("survey needs at least one target")
    labels = []
    entry_rows = []
    named = []
    for spec in specs:
        mat, name = _normalize_target(spec)
        labels.append(name if name is not None else repr(mat))
        entry_rows.append(mat.entries())
        named.append(name is not None)
    if len(set(labels)) != len(labels):
        raise ValueError("survey targets must be distinct")
    if not isinstance(size, int) or isinstance(size, bool) or size < 1:
        raise ValueError(f"size must be a positive integer, got {size!r}")
    bound = size if bound is None else bound
    if not isinstance(bound, int) or isinstance(bound, bool) or bound < 1:
        raise ValueError(f"bound must be a positive integer, got {bound!r}")

    if size <= 3:
        lows, highs = _box(size, bound, {})
        _check_budget(_projected(lows, highs), max_table_entries, "direct enumeration")
        counts, touches, by_last, by_first_last = [], [], [], []
        for entries in entry_rows:
            cnt, tch, last_row, fl_row, _ = _solve_direct(entries, size, bound, {}, False)
            counts.append(cnt)
            touches.append(tch)
            by_last.append(last_row)
            by_first_last.append(fl_row if with_first_last else {})
    else:
        counts, touches, by_last, by_first_last = _solve_mitm_counts(
            entry_rows, size, bound, {}, workers, max_table_entries, with_first_last)

    return SurveyResult(
        size=size,
        bound=bound,
        counts=dict(zip(labels, counts)),
        bound_touches=dict(zip(labels, touches)),
        by_last=dict(zip(labels, by_last)),
        by_first_last=dict(zip(labels, by_first_last)),
        exhaustive_within_bound={
            label: is_named and bound >= size
            for label, is_named in zip(labels, named)
        },
    )


def count_by_last(target, size, last, bound=None, workers=1,
                  max_table_entries=DEFAULT_MAX_TABLE_ENTRIES):
    """Number of solutions whose last component equals `last`."""
    query = OracleQuery(target=target, size=size, bound=bound,
                        constraints={size: last}, workers=workers,
                        max_table_entries=max_table_entries,
                        with_first_last=False)
    return solve(query).count


def count_component_at(target, size, position, value, bound=None, workers=1,
                       max_table_entries=DEFAULT_MAX_TABLE_ENTRIES):
    """Number of solutions with the given component pinned at a position."""
    query = OracleQuery(target=target, size=size, bound=bound,
                        constraints={position: value}, workers=workers,
                        max_table_entries=max_table_entries,
                        with_first_last=False)
    return solve(query).count


def count_first_last(target, size, first, last, bound=None, workers=1,
                     max_table_entries=DEFAULT_MAX_TABLE_ENTRIES):
    """Number of solutions with both the first and last component pinned."""
    if size == 1 and first != last:
        return 0
    constraints = {1: first, size: last}
    query = OracleQuery(target=target, size=size, bound=bound,
                        constraints=constraints, workers=workers,
                        max_table_entries=max_table_entries)
    return solve(query).count
