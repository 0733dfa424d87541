"""Surveys over the space of connection sets at one dimension.

Sets are enumerated as bitmasks over the 2ⁿ−1 nonzero labels: bit j of a
mask means label j+1 is a member, and masks run in ascending numeric
order, so every survey visits sets in one canonical order.  Unfiltered
exhaustive enumeration is allowed up to n = 4 (32767 sets); n = 5 is
reachable only with a degree filter (the raw space holds 2³¹ − 1 masks);
beyond that only sampling is offered.

Two surveys are built in.  The conjecture scan walks sets with xor-sum 0
and asks the exact decision procedure for any transfer offset at all; a
hit would be a counterexample to the observed rule that such sets never
admit PST.  The antipodality audit examines every transfer offset found
at a dimension, in both senses the word "antipodal" gets used for these
graphs:

  * the metric sense, distance(0, δ) equal to the diameter.  This reading
    is refuted outright by the data: {001,010,011,100} transfers to its
    xor-sum 100, a generator, at distance 1 in a diameter-2 graph, and
    most sets with a xor-sum inside the set behave the same way.  The
    audit records distance, diameter and the metric flag for every
    offset so the counts stay visible.
  * the structural sense, δ reachable by a walk through all generators,
    i.e. δ = u.  Every transfer offset observed at n ≤ 4 satisfies it.
    An offset with δ ≠ u would be news; those are the audit's violations
    and drive the nonzero exit code.

Both reports carry empirical weight only: an exhaustive pass at small n
proves nothing about larger n.

Reports are split into a deterministic payload (findings, counters, and a
sha256 digest over the canonical JSON) and volatile run metadata (wall
time), so byte-identical re-runs can be asserted digest-to-digest.
"""

from __future__ import annotations

import hashlib
import heapq
import json
import random
import time as _time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .bitspace import ConnectionSet, GroupElement, _check_dimension
from .graphwalk import bfs_profile
from .pst import pst_offsets

EXHAUSTIVE_CAP = 4
FILTERED_CAP = 5


class EnumerationCapError(ValueError):
    """The requested enumeration is too large to walk exhaustively."""


# ── enumeration ───────────────────────────────────────────────────────────

def _mask_labels(mask: int) -> list[int]:
    labels = []
    m = mask
    while m:
        low = m & -m
        labels.append(low.bit_length())  # mask bit j ↔ label j+1
        m ^= low
    return labels


def _xor_of_mask(mask: int) -> int:
    acc = 0
    for label in _mask_labels(mask):
        acc ^= label
    return acc


def _weight_masks(width: int, weight: int) -> Iterator[int]:
    """All width-bit masks of the given popcount, ascending (Gosper)."""
    if weight == 0 or weight > width:
        return
    v = (1 << weight) - 1
    limit = 1 << width
    while v < limit:
        yield v
        low = v & -v
        ripple = v + low
        v = ripple | (((v ^ ripple) >> 2) // low)


def _passes(mask: int, d_min, d_max, u_class) -> bool:
    d = mask.bit_count()
    if d_min is not None and d < d_min:
        return False
    if d_max is not None and d > d_max:
        return False
    if u_class == "zero":
        return _xor_of_mask(mask) == 0
    if u_class == "nonzero":
        return _xor_of_mask(mask) != 0
    return True


def _exhaustive_masks(n: int, d_min, d_max, u_class) -> Iterator[int]:
    width = (1 << n) - 1
    if n > FILTERED_CAP:
        raise EnumerationCapError(
            f"exhaustive enumeration stops at n = {FILTERED_CAP}; "
            f"use sampling for n = {n}")
    if n > EXHAUSTIVE_CAP and d_min is None and d_max is None:
        raise EnumerationCapError(
            f"n = {n} spans 2^{width} masks; a degree filter "
            "(or sampling) is required")
    if d_min is not None or d_max is not None:
        lo = max(1, d_min if d_min is not None else 1)
        hi = min(width, d_max if d_max is not None else width)
        streams = [_weight_masks(width, d) for d in range(lo, hi + 1)]
        for mask in heapq.merge(*streams):
            if u_class is None or _passes(mask, None, None, u_class):
                yield mask
    else:
        for mask in range(1, 1 << width):
            if u_class is None or _passes(mask, None, None, u_class):
                yield mask


def _sampled_masks(n: int, d_min, d_max, u_class, sample: int,
                   seed: int) -> list[int]:
    """Distinct masks matching the filters, ascending, seed-deterministic.

    With no degree filter the draw is uniform over the filtered space (the
    xor-sum-zero case uses an exact toggle bijection rather than straight
    rejection).  With a degree filter the draw is stratified: a degree
    first, then a uniform set of that size.
    """
    if sample < 1:
        raise ValueError(f"sample size must be positive, got {sample}")
    width = (1 << n) - 1
    rng = random.Random(seed)
    lo = max(1, d_min if d_min is not None else 1)
    hi = min(width, d_max if d_max is not None else width)
    if lo > hi:
        raise ValueError(f"empty degree window [{lo}, {hi}] at n = {n}")
    chosen: set[int] = set()
    attempts = 0
    cap = 10_000 * max(1, sample)
    while len(chosen) < sample and attempts < cap:
        attempts += 1
        if d_min is None and d_max is None:
            mask = rng.randrange(1, 1 << width)
        else:
            d = rng.randint(lo, hi)
            mask = 0
            for label in rng.sample(range(1, width + 1), d):
                mask |= 1 << (label - 1)
        if u_class == "zero":
            u = _xor_of_mask(mask)
            if u:
                mask ^= 1 << (u - 1)  # toggling label u zeroes the xor-sum
            if mask == 0 or not _passes(mask, d_min, d_max, None):
                continue
        elif u_class == "nonzero" and _xor_of_mask(mask) == 0:
            continue
        chosen.add(mask)
    if len(chosen) < sample:
        raise ValueError(
            f"could not collect {sample} sets matching the filters at "
            f"n = {n} (got {len(chosen)})")
    return sorted(chosen)


def enumerate_sets(n: int, *, d_min: int | None = None,
                   d_max: int | None = None, u_class: str | None = None,
                   sample: int | None = None,
                   seed: int = 0) -> Iterator[ConnectionSet]:
    """Connection sets at dimension n in canonical ascending-mask order.

    ``u_class`` is None, "zero", or "nonzero".  Without ``sample`` the walk
    is exhaustive and subject to the caps described in the module
    docstring; with it, a deterministic pseudo-random selection of that
    many distinct sets is produced.
    """
    _check_dimension(n)
    if u_class not in (None, "zero", "nonzero"):
        raise ValueError(f"u_class must be None, 'zero' or 'nonzero', "
                         f"got {u_class!r}")
    for bound in (d_min, d_max):
        if bound is not None and bound < 1:
            raise ValueError("degree bounds must be at least 1")
    if sample is None:
        masks: Iterator[int] | list[int] = _exhaustive_masks(
            n, d_min, d_max, u_class)
    else:
        masks = _sampled_masks(n, d_min, d_max, u_class, sample, seed)
    for mask in masks:
        d = mask.bit_count()
        if d_min is not None and d < d_min:
            continue
        if d_max is not None and d > d_max:
            continue
        yield ConnectionSet(n, tuple(_mask_labels(mask)))


# ── per-set records ───────────────────────────────────────────────────────

def transfer_record(omega: ConnectionSet) -> dict:
    """Exact PST offsets of one set, in a JSON-ready shape."""
    offsets = pst_offsets(omega)
    return {
        "omega": [format(e, f"0{omega.n}b") for e in omega.elements],
        "d": omega.d,
        "u": str(omega.u),
        "pst": [{"delta": format(db, f"0{omega.n}b"), "time": str(t)}
                for db, t in sorted(offsets.items())],
    }


def audit_record(omega: ConnectionSet) -> dict:
    """Transfer offsets of one set with their distance geometry.

    Per offset: the graph distance from 0, whether that equals the
    diameter (the metric antipodality flag), and whether the offset is
    the xor-sum of the set (the structural one).  ``diameter`` is the
    eccentricity of vertex 0 in its component, which equals the graph
    diameter when the graph is connected; every transfer offset lies in
    that component, so its distance is always defined.  ``violations``
    lists the offsets differing from the xor-sum.
    """
    record = transfer_record(omega)
    if record["pst"]:
        profile = bfs_profile(omega, GroupElement.zero(omega.n))
        record["connected"] = profile.connected
        record["diameter"] = profile.diameter
        violations = []
        for entry in record["pst"]:
            db = int(entry["delta"], 2)
            distance = int(profile.dist[db])
            entry["distance"] = distance
            entry["antipodal"] = distance == profile.diameter
            entry["is_xor_sum"] = entry["delta"] == record["u"]
            if not entry["is_xor_sum"]:
                violations.append(entry["delta"])
        record["violations"] = violations
    return record


# ── survey machinery ──────────────────────────────────────────────────────

def _fresh_counters() -> dict:
    return {"sets_scanned": 0, "sets_with_pst": 0, "offsets_checked": 0,
            "violations": 0, "metric_non_antipodal": 0,
            "disconnected_with_pst": 0}


def _tally(kind: str, omega: ConnectionSet, findings: list[dict],
           counters: dict) -> None:
    counters["sets_scanned"] += 1
    record = audit_record(omega) if kind == "audit" \
        else transfer_record(omega)
    if not record["pst"]:
        return
    counters["sets_with_pst"] += 1
    counters["offsets_checked"] += len(record["pst"])
    if kind == "audit":
        counters["violations"] += len(record["violations"])
        counters["metric_non_antipodal"] += sum(
            1 for e in record["pst"] if not e["antipodal"])
        if not record["connected"]:
            counters["disconnected_with_pst"] += 1
    findings.append(record)


def _survey_chunk(args: tuple) -> tuple[list[dict], dict]:
    """One contiguous mask range of a survey; runs in a worker process."""
    n, lo, hi, kind, d_min, d_max, u_class = args
    findings: list[dict] = []
    counters = _fresh_counters()
    for mask in range(lo, hi):
        if mask == 0 or not _passes(mask, d_min, d_max, u_class):
            continue
        _tally(kind, ConnectionSet(n, tuple(_mask_labels(mask))),
               findings, counters)
    return findings, counters


@dataclass(eq=False)
class ScanReport:
    """Survey result: deterministic payload plus volatile wall time.

    ``payload`` (and therefore ``digest``) contains nothing that varies
    between identical runs; two equal surveys must produce byte-identical
    payload JSON regardless of worker count or clock.
    """

    kind: str
    n: int
    filters: dict
    universe: int
    findings: list[dict]
    summary: dict
    violations: int
    wall_time_s: float

    def payload(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "filters": self.filters,
            "universe": self.universe,
            "violations": self.violations,
            "summary": self.summary,
            "findings": self.findings,
        }

    def canonical_json(self) -> str:
        return json.dumps(self.payload(), sort_keys=True,
                          separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()


def _run_survey(n: int, kind: str, *, d_min=None, d_max=None, u_class=None,
                sample=None, seed=0, jobs=1) -> tuple[list[dict], dict]:
    if jobs > 1 and sample is None and d_min is None and d_max is None \
            and n <= EXHAUSTIVE_CAP:
        width = (1 << n) - 1
        total = 1 << width
        chunks = []
        step = max(1, total // (jobs * 4))
        lo = 1
        while lo < total:
            hi = min(total, lo + step)
            chunks.append((n, lo, hi, kind, d_min, d_max, u_class))
            lo = hi
        findings: list[dict] = []
        counters: dict = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part_findings, part_counters in pool.map(_survey_chunk,
                                                         chunks):
                findings.extend(part_findings)
                for key, val in part_counters.items():
                    counters[key] = counters.get(key, 0) + val
        return findings, counters
    findings = []
    counters = _fresh_counters()
    for omega in enumerate_sets(n, d_min=d_min, d_max=d_max, u_class=u_class,
                                sample=sample, seed=seed):
        _tally(kind, omega, findings, counters)
    return findings, counters


def _filters_dict(d_min, d_max, u_class, sample, seed) -> dict:
    return {
        "d_min": d_min,
        "d_max": d_max,
        "u": u_class if u_class is not None else "any",
        "sample": sample,
        "seed": seed if sample is not None else None,
    }


EVIDENCE_NOTE = ("empirical evidence only: exhaustive at this n, silent "
                 "about every larger n")


def scan_sets(n: int, *, d_min: int | None = None, d_max: int | None = None,
              u_class: str | None = None, sample: int | None = None,
              seed: int = 0, jobs: int = 1) -> ScanReport:
    """General transfer survey; findings are the sets that admit PST."""
    started = _time.perf_counter()
    findings, counters = _run_survey(n, "pst", d_min=d_min, d_max=d_max,
                                     u_class=u_class, sample=sample,
                                     seed=seed, jobs=jobs)
    summary = {
        "sets_scanned": counters["sets_scanned"],
        "sets_with_pst": counters["sets_with_pst"],
        "offsets_checked": counters["offsets_checked"],
        "note": EVIDENCE_NOTE if sample is None else
                "sampled evidence only",
    }
    return ScanReport(kind="pst-scan", n=n,
                      filters=_filters_dict(d_min, d_max, u_class, sample,
                                            seed),
                      universe=counters["sets_scanned"], findings=findings,
                      summary=summary, violations=0,
                      wall_time_s=_time.perf_counter() - started)


def conjecture_scan(n: int, *, d_min: int | None = None,
                    d_max: int | None = None, sample: int | None = None,
                    seed: int = 0, jobs: int = 1) -> ScanReport:
    """Hunt for PST on xor-sum-zero sets; any finding is a counterexample.

    Every scan to date has come back empty, which is exactly what makes
    the absence worth re-checking: the emptiness is evidence, not a
    theorem, and the report says so.
    """
    started = _time.perf_counter()
    findings, counters = _run_survey(n, "pst", d_min=d_min, d_max=d_max,
                                     u_class="zero", sample=sample,
                                     seed=seed, jobs=jobs)
    summary = {
        "sets_scanned": counters["sets_scanned"],
        "counterexamples": counters["sets_with_pst"],
        "note": EVIDENCE_NOTE if sample is None else
                "sampled evidence only",
    }
    return ScanReport(kind="conjecture-scan", n=n,
                      filters=_filters_dict(d_min, d_max, "zero", sample,
                                            seed),
                      universe=counters["sets_scanned"], findings=findings,
                      summary=summary,
                      violations=counters["sets_with_pst"],
                      wall_time_s=_time.perf_counter() - started)


def antipodality_audit(n: int, *, jobs: int = 1) -> ScanReport:
    """Check every transfer offset at dimension n for antipodality.

    A violation is an offset that differs from the set's xor-sum, the
    structural reading described in the module docstring; none has ever
    been observed.  The metric reading (distance equal to diameter) is
    tallied alongside as ``metric_non_antipodal`` and is nonzero from
    n = 3 on, which is a result, not a malfunction: transfer to a
    generator offset happens whenever the xor-sum lies inside the set.
    Findings are built by ``audit_record``, which anyone can re-run on a
    single set to confirm a report line independently.
    """
    started = _time.perf_counter()
    findings, counters = _run_survey(n, "audit", jobs=jobs)
    summary = {
        "sets_scanned": counters["sets_scanned"],
        "sets_with_pst": counters["sets_with_pst"],
        "offsets_checked": counters["offsets_checked"],
        "violations": counters["violations"],
        "metric_non_antipodal": counters["metric_non_antipodal"],
        "disconnected_with_pst": counters["disconnected_with_pst"],
        "reading": ("violation = transfer offset differing from the "
                    "xor-sum; the distance-vs-diameter counts are "
                    "reported, not asserted"),
        "note": EVIDENCE_NOTE,
    }
    return ScanReport(kind="antipodal-audit", n=n,
                      filters=_filters_dict(None, None, None, None, None),
                      universe=counters["sets_scanned"], findings=findings,
                      summary=summary, violations=counters["violations"],
                      wall_time_s=_time.perf_counter() - started)
