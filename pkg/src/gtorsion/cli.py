"""Command-line entry point: ``gtorsion {search,verify-table,certify,biorder,classify,schema}``.

Settings resolve as flag > environment variable > default.  Every command
returns a ``ResultEnvelope``; ``main`` renders it and maps the verdict to
an exit code.

Exit codes
    0  success (witness found, table passes, certificate built, ...)
    1  a verdict failed (some table row does not verify)
    2  bad parameters or unparsable input
    3  search finished with verdict "unknown"
    4  a budget or cap was exceeded
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .biorder import KContext, phi, word_sign
from .certificates import DEFAULT_K_CAP, ChebyshevCapExceeded, torsion_certificate
from .classify import (alexander, canonicalize, jsj, knot_relation,
                       zero_surgery_homeo)
from .permrep.search import (ORACLE_MAX_DEGREE, SearchBudgetExceeded,
                             search_exhaustive_oracle, search_witness,
                             witness_from_images)
from .presentations import STD, CANDIDATE_LABELS, DoubleTwistParams, candidate
from .schemas import PAYLOADS, envelope_schema
from .table import TableRowError, parse_row, read_table_json
from .words import WordParseError

log = logging.getLogger("gtorsion")

EXIT_OK, EXIT_FAIL, EXIT_PARAM, EXIT_UNKNOWN, EXIT_BUDGET = 0, 1, 2, 3, 4
CACHE_VERSION = 1
PRUNED_MAX_DEGREE = 10
MODES = ("pruned", "exhaustive", "both")
FORMATS = ("json", "csv", "text")

ENV_PREFIX = "GTORSION_"


class ParameterError(ValueError):
    pass


class BudgetError(RuntimeError):
    pass


def default_cache_dir(env: dict | None = None) -> str:
    env = os.environ if env is None else env
    base = env.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return os.path.join(base, "gtorsion")


@dataclass(frozen=True)
class RunConfig:
    max_degree: int = 9
    search_mode: str = "pruned"
    thread_count: int = 1
    cache_dir: str | None = None
    output_format: str = "json"
    chebyshev_k_cap: int = DEFAULT_K_CAP

    def __post_init__(self) -> None:
        if self.max_degree < 1:
            raise ParameterError("max_degree must be at least 1")
        if self.search_mode not in MODES:
            raise ParameterError(f"search mode must be one of {MODES}")
        if self.output_format not in FORMATS:
            raise ParameterError(f"output format must be one of {FORMATS}")
        if self.thread_count < 1:
            raise ParameterError("thread count must be at least 1")
        if self.chebyshev_k_cap < 1:
            raise ParameterError("k cap must be at least 1")

    @classmethod
    def resolve(cls, flags: dict, env: dict | None = None) -> RunConfig:
        """Flags win over ``GTORSION_*`` variables, which win over defaults.

        An empty variable counts as unset.  A cache directory of ``none`` (or
        an empty ``--cache-dir``) disables the witness cache.
        """
        env = os.environ if env is None else env
        spec = {
            "max_degree": ("MAX_DEGREE", int),
            "search_mode": ("MODE", str),
            "thread_count": ("THREADS", int),
            "cache_dir": ("CACHE_DIR", str),
            "output_format": ("FORMAT", str),
            "chebyshev_k_cap": ("K_CAP", int),
        }
        values = {}
        for name, (suffix, conv) in spec.items():
            if flags.get(name) is not None:
                values[name] = flags[name]
            elif env.get(ENV_PREFIX + suffix):
                try:
                    values[name] = conv(env[ENV_PREFIX + suffix])
                except ValueError as exc:
                    raise ParameterError(f"bad value for {ENV_PREFIX + suffix}: {exc}") from exc
        if values.get("cache_dir") in ("", "none"):
            values["cache_dir"] = None
        elif "cache_dir" not in values:
            values["cache_dir"] = default_cache_dir(env)
        return cls(**values)


@dataclass
class ResultEnvelope:
    command: str
    params: dict
    payload: dict
    config: RunConfig
    exit_code: int = EXIT_OK
    timing: dict = field(default_factory=dict)
    version: str = __version__

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "payload": self.payload,
            "timing": self.timing,
            "version": self.version,
            "config": asdict(self.config),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _timed(command: str, params: dict, config: RunConfig,
           body: Callable[[], tuple[dict, int, dict]]) -> ResultEnvelope:
    start = time.perf_counter()
    payload, code, extra = body()
    timing = {"seconds": round(time.perf_counter() - start, 6), **extra}
    return ResultEnvelope(command, params, payload, config, code, timing)


def _params(p: int, q: int) -> DoubleTwistParams:
    try:
        return DoubleTwistParams(p, q)
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc


# -- witness cache ---------------------------------------------------------------

def _slug(text: str) -> str:
    return "".join(c if c.isalnum() else "_" for c in text).strip("_")


class WitnessCache:
    """One JSON file per ``(p, q, n, candidate, mode)`` under a versioned directory."""

    def __init__(self, root: str | None):
        self.root = Path(root) / f"v{CACHE_VERSION}" if root else None
        self.hits = 0
        self.misses = 0

    def _path(self, key: tuple) -> Path:
        return self.root / ("_".join(_slug(str(k)) for k in key) + ".json")

    def get(self, key: tuple) -> dict | None:
        if self.root is None:
            return None
        path = self._path(key)
        if not path.exists():
            self.misses += 1
            return None
        self.hits += 1
        return json.loads(path.read_text())

    def put(self, key: tuple, entry: dict) -> None:
        if self.root is None:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        path = self._path(key)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(entry, sort_keys=True))
        tmp.replace(path)


# -- commands ------------------------------------------------------------------------

def _search_degree(pr: DoubleTwistParams, n: int, cand, config: RunConfig) -> dict:
    entry: dict = {"n": n}
    pruned = oracle = None
    if config.search_mode in ("pruned", "both"):
        pruned = search_witness(pr, n, cand, workers=config.thread_count)
    if config.search_mode in ("exhaustive", "both"):
        oracle = search_exhaustive_oracle(pr, n, cand)
    rec = pruned if config.search_mode != "exhaustive" else oracle
    entry["witness"] = rec.to_dict() if rec else None
    if config.search_mode == "both":
        entry["oracle_agrees"] = (pruned is None) == (oracle is None) and (
            pruned is None or pruned.y == oracle.y)
    return entry


def cmd_search(p: int, q: int, config: RunConfig, candidate_label: str = "[xy,yx]",
               candidate_n: int | None = None) -> ResultEnvelope:
    pr = _params(p, q)
    budget = PRUNED_MAX_DEGREE if config.search_mode == "pruned" else ORACLE_MAX_DEGREE
    if config.max_degree > budget:
        raise BudgetError(f"max degree {config.max_degree} exceeds the {config.search_mode} budget {budget}")
    try:
        cand = candidate(candidate_label, pr, candidate_n)
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc
    cache = WitnessCache(config.cache_dir)

    def body():
        degrees = []
        for n in range(1, config.max_degree + 1):
            key = (pr.p, pr.q, n, candidate_label, candidate_n, config.search_mode)
            entry = cache.get(key)
            if entry is None:
                entry = _search_degree(pr, n, cand, config)
                cache.put(key, entry)
            degrees.append(entry)
        found = [d for d in degrees if d["witness"]]
        payload = {
            "p": pr.p,
            "q": pr.q,
            "candidate": candidate_label,
            "mode": config.search_mode,
            "max_degree": config.max_degree,
            "verdict": "witness" if found else "unknown",
            "first_degree": found[0]["n"] if found else None,
            "degrees": degrees,
        }
        if config.search_mode == "both":
            payload["oracle_agrees"] = all(d["oracle_agrees"] for d in degrees)
        code = EXIT_OK if found else EXIT_UNKNOWN
        if config.search_mode == "both" and not payload["oracle_agrees"]:
            code = EXIT_FAIL
        return payload, code, {"cache_hits": cache.hits, "cache_misses": cache.misses}

    return _timed("search", {"p": p, "q": q, "candidate": candidate_label}, config, body)


def cmd_verify_table(path: str | None, config: RunConfig) -> ResultEnvelope:
    try:
        docs = read_table_json(path)
    except (OSError, ValueError) as exc:
        raise ParameterError(f"cannot read table: {exc}") from exc

    def body():
        rows, warnings = [], []
        for i, doc in enumerate(docs):
            out = {"index": i}
            try:
                row = parse_row(doc)
                out.update(p=row.p, q=row.q)
                if not row.filled:
                    out["status"] = "unknown"
                else:
                    out["n"] = row.n
                    try:
                        witness_from_images((row.p, row.q), row.x, row.y)
                        out["status"] = "pass"
                    except ValueError as exc:
                        out["status"] = "fail"
                        out["message"] = str(exc)
            except (TableRowError, ValueError) as exc:
                out["status"] = "error"
                out["message"] = str(exc)
            rows.append(out)
        if not any(r["status"] in ("pass", "fail") for r in rows):
            warnings.append("table has no filled rows; pass is vacuous")
            log.warning(warnings[-1])
        bad = [r for r in rows if r["status"] in ("fail", "error")]
        counts = {s: sum(r["status"] == s for r in rows) for s in ("pass", "fail", "error", "unknown")}
        payload = {"verdict": "fail" if bad else "pass", "counts": counts, "rows": rows,
                   "warnings": warnings}
        return payload, EXIT_FAIL if bad else EXIT_OK, {}

    return _timed("verify-table", {"path": str(path) if path else None}, config, body)


def cmd_certify(p: int, q: int, config: RunConfig) -> ResultEnvelope:
    if p < 1 or q < 1:
        raise ParameterError("certify takes p, q >= 1 and certifies K_{p,-q}")

    def body():
        try:
            cert = torsion_certificate(p, q, config.chebyshev_k_cap)
        except ChebyshevCapExceeded as exc:
            raise BudgetError(str(exc)) from exc
        payload = cert.to_dict()
        payload["target"] = [p, -q]
        return payload, EXIT_OK, {}

    return _timed("certify", {"p": p, "q": q}, config, body)


def cmd_biorder(p: int, q: int, word_text: str, config: RunConfig) -> ResultEnvelope:
    if p < 1 or q < 1:
        raise ParameterError("the bi-order needs p, q >= 1")
    try:
        w = STD.word(word_text)
    except (WordParseError, KeyError, ValueError) as exc:
        raise ParameterError(f"cannot parse {word_text!r}: {exc}") from exc

    def body():
        ctx = KContext(p, q)
        image = phi(w, ctx)
        payload = {"word": str(w), "phi": image.to_dict(), "sign": word_sign(w, ctx).label}
        return payload, EXIT_OK, {}

    return _timed("biorder", {"p": p, "q": q, "word": word_text}, config, body)


def _invariants(p: int, q: int) -> dict:
    return {
        "p": p,
        "q": q,
        "alexander": alexander(p, q).coefficients(),
        "jsj": jsj(p, q).to_dict(),
        "class_representative": list(canonicalize(p, q)),
    }


def cmd_classify(p: int, q: int, other: Sequence[int] | None, config: RunConfig) -> ResultEnvelope:
    if 0 in (p, q) or (other and 0 in other):
        raise ParameterError("parameters must be non-zero")
    if other is not None and len(other) != 2:
        raise ParameterError("classify takes two or four integers")

    def body():
        payload = _invariants(p, q)
        if other:
            p2, q2 = other
            payload["other"] = _invariants(p2, q2)
            payload["zero_surgery_homeomorphic"] = zero_surgery_homeo(p, q, p2, q2)
            payload["knot_relation"] = knot_relation(p, q, p2, q2).value
        return payload, EXIT_OK, {}

    params = {"p": p, "q": q}
    if other:
        params.update(p2=other[0], q2=other[1])
    return _timed("classify", params, config, body)


# -- rendering ---------------------------------------------------------------------

def _csv_rows(env: ResultEnvelope) -> tuple[list[str], list[list]]:
    pl = env.payload
    if env.command == "search":
        header = ["p", "q", "n", "x", "y", "candidate_image"]
        rows = [[pl["p"], pl["q"], d["n"], " ".join(map(str, d["witness"]["x"])),
                 " ".join(map(str, d["witness"]["y"])),
                 " ".join(map(str, d["witness"]["candidate_image"]))]
                for d in pl["degrees"] if d["witness"]]
        return header, rows
    if env.command == "verify-table":
        header = ["index", "p", "q", "n", "status", "message"]
        return header, [[r.get(k, "") for k in header] for r in pl["rows"]]
    flat = []

    def walk(prefix, val):
        if isinstance(val, dict):
            for k in sorted(val):
                walk(f"{prefix}.{k}" if prefix else k, val[k])
        else:
            flat.append([prefix, json.dumps(val) if isinstance(val, list) else val])

    walk("", pl)
    return ["key", "value"], flat


def _text(env: ResultEnvelope) -> str:
    pl = env.payload
    if env.command == "search":
        lines = [f"K_{{{pl['p']},{pl['q']}}}(0), candidate {pl['candidate']}: {pl['verdict']}"]
        for d in pl["degrees"]:
            w = d["witness"]
            lines.append(f"  n={d['n']}: " + (f"x={w['x']} y={w['y']}" if w else "none"))
        return "\n".join(lines)
    if env.command == "verify-table":
        lines = [f"table: {pl['verdict']} {pl['counts']}"]
        lines += [f"  ({r.get('p')},{r.get('q')}) {r['status']}" + (f": {r['message']}" if "message" in r else "")
                  for r in pl["rows"]]
        lines += [f"warning: {w}" for w in pl["warnings"]]
        return "\n".join(lines)
    if env.command == "certify":
        return (f"K_{{{pl['p']},-{pl['q']}}}(0): k={pl['k']} n={pl['n']} m={pl['m']} "
                f"identity verified={pl['matrix_identity_verified']}\n{pl['certificate_word_text']}")
    if env.command == "biorder":
        return f"phi({pl['word']}) = {pl['phi']}\nsign: {pl['sign']}"
    lines = [f"({pl['p']},{pl['q']}): alexander={pl['alexander']} jsj={pl['jsj']} "
             f"class={pl['class_representative']}"]
    if "other" in pl:
        lines.append(f"homeomorphic 0-surgeries: {pl['zero_surgery_homeomorphic']}; "
                     f"knots: {pl['knot_relation']}")
    return "\n".join(lines)


def render(env: ResultEnvelope) -> str:
    fmt = env.config.output_format
    if fmt == "json":
        return env.to_json()
    if fmt == "text":
        return _text(env)
    header, rows = _csv_rows(env)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


# -- argument parsing --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, dest="max_degree")
    common.add_argument("--mode", choices=MODES, dest="search_mode")
    common.add_argument("--threads", type=int, dest="thread_count")
    common.add_argument("--cache-dir", dest="cache_dir", help='directory, or "none" to disable')
    common.add_argument("--format", choices=FORMATS, dest="output_format")
    common.add_argument("--k-cap", type=int, dest="chebyshev_k_cap")

    parser = argparse.ArgumentParser(
        prog="gtorsion",
        description="Generalized torsion and bi-order computations for 0-surgeries on double twist knots.",
        epilog="Exit codes: 0 success, 1 failed verdict, 2 bad parameters, 3 unknown, 4 budget exceeded.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", parents=[common], help="search S_{n+1} quotients for a witness")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("--candidate", default="[xy,yx]", choices=CANDIDATE_LABELS)
    s.add_argument("--candidate-n", type=int)

    v = sub.add_parser("verify-table", parents=[common], help="check every filled row of a witness table")
    v.add_argument("path", nargs="?")

    c = sub.add_parser("certify", parents=[common], help="certificate for K_{p,-q}, p, q >= 1")
    c.add_argument("p", type=int)
    c.add_argument("q", type=int)

    b = sub.add_parser("biorder", parents=[common], help="image under phi and sign of a word over a, b, t")
    b.add_argument("p", type=int)
    b.add_argument("q", type=int)
    b.add_argument("word")

    k = sub.add_parser("classify", parents=[common], help="invariants, and homeomorphism with a second pair")
    k.add_argument("p", type=int)
    k.add_argument("q", type=int)
    k.add_argument("other", type=int, nargs="*", metavar="p2 q2")

    sc = sub.add_parser("schema", help="print the JSON schema of a command's envelope")
    sc.add_argument("schema_command", choices=sorted(PAYLOADS), metavar="COMMAND")
    return parser


def run(argv: Sequence[str] | None = None, env: dict | None = None) -> tuple[int, str]:
    """Parse, execute and render; returns ``(exit_code, output)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_PARAM if exc.code else EXIT_OK), ""
    if args.command == "schema":
        return EXIT_OK, json.dumps(envelope_schema(args.schema_command), indent=2, sort_keys=True)
    flags = {k: getattr(args, k, None) for k in
             ("max_degree", "search_mode", "thread_count", "cache_dir", "output_format", "chebyshev_k_cap")}
    try:
        config = RunConfig.resolve(flags, env)
        if args.command == "search":
            result = cmd_search(args.p, args.q, config, args.candidate, args.candidate_n)
        elif args.command == "verify-table":
            result = cmd_verify_table(args.path, config)
        elif args.command == "certify":
            result = cmd_certify(args.p, args.q, config)
        elif args.command == "biorder":
            result = cmd_biorder(args.p, args.q, args.word, config)
        else:
            result = cmd_classify(args.p, args.q, args.other or None, config)
    except ParameterError as exc:
        return EXIT_PARAM, f"error: {exc}"
    except (BudgetError, SearchBudgetExceeded) as exc:
        return EXIT_BUDGET, f"error: {exc}"
    return result.exit_code, render(result)


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    code, out = run(argv)
    if out:
        stream = sys.stderr if out.startswith("error:") else sys.stdout
        print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
