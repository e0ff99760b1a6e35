"""Command-line front end: ``bigpolygon {analyze,chambers,verify-conjecture,koszul,selftest}``.

Every flag can also be set through an environment variable named
``BPS_<FLAG>`` (for example ``BPS_ENTRY_BOUND=9``); an explicit flag wins.

Exit codes: 0 success, 1 usage or input error, 2 conjecture violation,
3 non-generic length vector, 4 resource cap or timeout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import multiprocessing as mp
import os
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import acceptance
from . import bigpoly as bp
from .gradedmod import KoszulData, koszul_syzygy_presentation, minimal_free_resolution, syzygy_order
from .lenvec import (
    Chamber,
    LengthVector,
    NonGeneric,
    chamber_census,
    chambers_csv,
    chambers_from_json,
    chambers_json,
    complement,
    mu,
    subset_elements,
)
from .polyring import ResourceCapExceeded

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_NONGENERIC, EXIT_CAP = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    degree_cap: int = 64
    pair_limit: int | None = None
    threads: int = 1
    out: str | None = None
    format: str = "json"
    entry_bound: int = 7
    timeout: float | None = None
    cache_dir: str | None = None

    def caps(self):
        return {"degree_cap": self.degree_cap, "pair_limit": self.pair_limit}


@dataclass
class ChamberReport:
    chamber_id: int | None
    representative: list
    a: int
    mu: int
    syzord: dict              # b -> syzygy order, or None if not computed
    conjecture_ok: bool | None
    poincare_X: list
    betti_sum_E: int
    pairing_perfect: bool
    status: str = "ok"        # ok, timeout, cap
    seconds: float = 0.0

    def to_dict(self):
        d = asdict(self)
        d["syzord"] = {str(b): s for b, s in sorted(self.syzord.items())}
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["syzord"] = {int(b): s for b, s in d["syzord"].items()}
        return cls(**d)

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _conjecture_ok(m, syzord):
    known = [s for s in syzord.values() if s is not None]
    if len(known) < len(syzord):
        return None
    return all(s == m - 1 for s in known)


def build_report(l: LengthVector, a: int, bs, caps, chamber_id=None, known=None) -> ChamberReport:
    """Report for one length vector; ``known`` maps b to precomputed syzygy orders."""
    start = time.perf_counter()
    known = known or {}
    syz = {b: known[b] if b in known else bp.ht_syzygy_order(bp.SpaceParams(a, b, l), **caps)
           for b in bs}
    m = mu(l)
    p = bp.SpaceParams(a, min(bs), l)
    return ChamberReport(
        chamber_id=chamber_id,
        representative=[str(x) for x in l.entries],
        a=a,
        mu=m,
        syzord=syz,
        conjecture_ok=_conjecture_ok(m, syz),
        poincare_X=[int(c) for c in bp.poincare_polynomial_X(p)],
        betti_sum_E=bp.betti_sum_E(l, a),
        pairing_perfect=bool(bp.is_signed_permutation(bp.pairing_matrix(p))),
        seconds=round(time.perf_counter() - start, 4),
    )


def reports_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    bs = sorted({b for rep in reports for b in rep.syzord})
    w.writerow(["chamber_id", "representative", "a", "mu"] + [f"syzord_b{b}" for b in bs]
               + ["conjecture_ok", "poincare_X", "betti_sum_E", "pairing_perfect", "status", "seconds"])
    for rep in reports:
        w.writerow([rep.chamber_id, ",".join(rep.representative), rep.a, rep.mu]
                   + [rep.syzord.get(b) for b in bs]
                   + [rep.conjecture_ok, " ".join(map(str, rep.poincare_X)), rep.betti_sum_E,
                      rep.pairing_perfect, rep.status, rep.seconds])
    return buf.getvalue()


def _emit(text: str, cfg: RunConfig):
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ------------------------------------------------------------------ commands

def cmd_analyze(lengths: str, a: int, b: int | None, cfg: RunConfig) -> int:
    l = LengthVector.parse(lengths)
    l.require_generic()
    bs = sorted({1, 2} | ({b} if b else set()))
    rep = build_report(l, a, bs, cfg.caps())
    if cfg.format == "csv":
        _emit(reports_csv([rep]), cfg)
    else:
        _emit(json.dumps(rep.to_dict(), indent=1), cfg)
    return EXIT_OK if rep.conjecture_ok else EXIT_VIOLATION


def cmd_chambers(r: int, cfg: RunConfig) -> int:
    chambers, stable = chamber_census(r, cfg.entry_bound)
    if not stable:
        print(f"warning: chamber count for r={r} not stable at entry bound {cfg.entry_bound}",
              file=sys.stderr)
    text = chambers_csv(chambers) if cfg.format == "csv" else chambers_json(chambers, stable)
    _emit(text, cfg)
    return EXIT_OK


def _load_chambers(r: int, cfg: RunConfig):
    if cfg.cache_dir:
        db = Path(cfg.cache_dir) / f"chambers_r{r}_e{cfg.entry_bound}.json"
        if db.exists():
            return chambers_from_json(db.read_text())
    chambers, stable = chamber_census(r, cfg.entry_bound)
    if not stable:
        print(f"warning: chamber count for r={r} not stable at entry bound {cfg.entry_bound}",
              file=sys.stderr)
    if cfg.cache_dir:
        Path(cfg.cache_dir).mkdir(parents=True, exist_ok=True)
        db.write_text(chambers_json(chambers, stable))
    return chambers


def _cache_key(c: Chamber, b: int) -> str:
    return f"{c.key()}|b={b}"


def _sweep_task(task):
    chamber_id, rep, a, b, caps = task
    l = LengthVector(rep)
    try:
        return build_report(l, a, [b], caps, chamber_id).to_dict()
    except ResourceCapExceeded:
        return None


def _placeholder(chamber_id, c: Chamber, a, b, status) -> ChamberReport:
    l = c.length_vector()
    p = bp.SpaceParams(a, b, l)
    return ChamberReport(chamber_id, [str(x) for x in l.entries], a, mu(l), {b: None}, None,
                         [int(x) for x in bp.poincare_polynomial_X(p)], bp.betti_sum_E(l, a),
                         bool(bp.is_signed_permutation(bp.pairing_matrix(p))), status)


def verify_chambers(r: int, a: int, b: int, cfg: RunConfig) -> list:
    chambers = _load_chambers(r, cfg)
    cache_file = Path(cfg.cache_dir) / "syzord_cache.json" if cfg.cache_dir else None
    cache = json.loads(cache_file.read_text()) if cache_file and cache_file.exists() else {}
    reports = [None] * len(chambers)
    todo = []
    for i, c in enumerate(chambers):
        key = _cache_key(c, b)
        if key in cache:
            reports[i] = build_report(c.length_vector(), a, [b], cfg.caps(), i, {b: cache[key]})
        else:
            todo.append((i, c.representative, a, b, cfg.caps()))
    if todo:
        if cfg.threads > 1 or cfg.timeout is not None:
            with mp.get_context("spawn").Pool(max(1, cfg.threads)) as pool:
                pending = [(t[0], pool.apply_async(_sweep_task, (t,))) for t in todo]
                for i, res in pending:
                    try:
                        out = res.get(timeout=cfg.timeout)
                    except mp.TimeoutError:
                        reports[i] = _placeholder(i, chambers[i], a, b, "timeout")
                        continue
                    reports[i] = (ChamberReport.from_dict(out) if out is not None
                                  else _placeholder(i, chambers[i], a, b, "cap"))
                pool.terminate()
        else:
            for t in todo:
                out = _sweep_task(t)
                i = t[0]
                reports[i] = (ChamberReport.from_dict(out) if out is not None
                              else _placeholder(i, chambers[i], a, b, "cap"))
    if cache_file:
        for c, rep in zip(chambers, reports):
            if rep.syzord[b] is not None:
                cache[_cache_key(c, b)] = rep.syzord[b]
        cache_file.write_text(json.dumps(cache, indent=1, sort_keys=True))
    return reports


def cmd_verify_conjecture(r: int, a: int, b: int, cfg: RunConfig) -> int:
    reports = verify_chambers(r, a, b, cfg)
    if cfg.format == "csv":
        _emit(reports_csv(reports), cfg)
    else:
        _emit(json.dumps([rep.to_dict() for rep in reports], indent=1), cfg)
    good = sum(1 for rep in reports if rep.conjecture_ok)
    print(f"{good}/{len(reports)} chambers satisfy syzord = μ−1", file=sys.stderr)
    if any(rep.conjecture_ok is False for rep in reports):
        return EXIT_VIOLATION
    if any(rep.status != "ok" for rep in reports):
        return EXIT_CAP
    return EXIT_OK


def cmd_koszul(r: int, b: int, k: int, cfg: RunConfig) -> int:
    P = koszul_syzygy_presentation(k, KoszulData(r, b))
    res = minimal_free_resolution(P, **cfg.caps())
    if cfg.format == "csv":
        _emit(res.betti_csv(), cfg)
        return EXIT_OK
    hs = res.hilbert_series()
    report = {
        "r": r,
        "b": b,
        "k": k,
        "presentation": P.relations.to_json_obj(),
        "ranks": res.ranks(),
        "betti": [[i, d, n] for (i, d), n in sorted(res.betti_table().items())],
        "hilbert_numerator": {str(d): c for d, c in sorted(hs.numerator.items())},
        "syzord": syzygy_order(P, **cfg.caps()),
    }
    _emit(json.dumps(report, indent=1), cfg)
    return EXIT_OK


def cmd_selftest() -> int:
    return EXIT_OK if acceptance.run_all() else EXIT_USAGE


# -------------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for conjecture violations
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env(name, cast=str, default=None):
    raw = os.environ.get("BPS_" + name)
    return default if raw is None or raw == "" else cast(raw)


def _optional_int(text):
    return None if text.lower() in ("", "none") else int(text)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--degree-cap", type=int, default=_env("DEGREE_CAP", int, 64))
    common.add_argument("--pair-limit", type=_optional_int, default=_env("PAIR_LIMIT", _optional_int))
    common.add_argument("--threads", type=int, default=_env("THREADS", int, 1))
    common.add_argument("--out", default=_env("OUT"))
    common.add_argument("--format", choices=("json", "csv"), default=_env("FORMAT", str, "json"))
    common.add_argument("--entry-bound", type=int, default=_env("ENTRY_BOUND", int, 7))
    common.add_argument("--timeout", type=float, default=_env("TIMEOUT", float),
                        help="per-chamber time limit in seconds for sweeps")
    common.add_argument("--cache-dir", default=_env("CACHE_DIR"),
                        help="directory for the chamber database and the results cache")

    parser = _Parser(prog="bigpolygon", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="invariants of one length vector")
    p.add_argument("--lengths", default=_env("LENGTHS"), required=_env("LENGTHS") is None)
    p.add_argument("--a", type=int, default=_env("A", int, 1))
    p.add_argument("--b", type=int, default=_env("B", int))

    p = sub.add_parser("chambers", parents=[common], help="enumerate chambers")
    p.add_argument("--r", type=int, default=_env("R", int), required=_env("R") is None)

    p = sub.add_parser("verify-conjecture", parents=[common], help="check syzord = mu - 1 on all chambers")
    p.add_argument("--r", type=int, default=_env("R", int), required=_env("R") is None)
    p.add_argument("--a", type=int, default=_env("A", int, 1))
    p.add_argument("--b", type=int, default=_env("B", int, 1))

    p = sub.add_parser("koszul", parents=[common], help="Koszul syzygy K_k of t_1^b, ..., t_r^b")
    p.add_argument("--r", type=int, default=_env("R", int), required=_env("R") is None)
    p.add_argument("--b", type=int, default=_env("B", int, 1))
    p.add_argument("--k", type=int, default=_env("K", int), required=_env("K") is None)

    sub.add_parser("selftest", help="run the acceptance checks")
    return parser


def _config(args) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    return RunConfig(**{k: getattr(args, k) for k in fields if hasattr(args, k)})


def _witness_error(e: NonGeneric) -> str:
    r = len(e.lengths)
    return json.dumps({
        "error": "NonGeneric",
        "lengths": [str(x) for x in e.lengths],
        "witness": list(subset_elements(e.witness)),
        "complement": list(subset_elements(complement(e.witness, r))),
        "message": str(e),
    })


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        return cmd_selftest()
    cfg = _config(args)
    try:
        if args.command == "analyze":
            return cmd_analyze(args.lengths, args.a, args.b, cfg)
        if args.command == "chambers":
            return cmd_chambers(args.r, cfg)
        if args.command == "verify-conjecture":
            return cmd_verify_conjecture(args.r, args.a, args.b, cfg)
        if args.command == "koszul":
            return cmd_koszul(args.r, args.b, args.k, cfg)
    except NonGeneric as e:
        print(_witness_error(e), file=sys.stderr)
        return EXIT_NONGENERIC
    except ResourceCapExceeded as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OSError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
