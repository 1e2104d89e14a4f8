"""Command-line front end.

    drinfeld-structure analyze --p 2 --n 2 --a1 '[0,0]' --a2 '[0,0]' --a3 '[1,0]'
    drinfeld-structure enumerate --p 2 --n 2
    drinfeld-structure realize --p 2 --i1 '[1,1]' --i2 '[1,1]'
    drinfeld-structure frobmatrix --p 2 --n 2 --a1 '[0,1]' --a2 '[0,0]' --a3 '[1,1]' --a '[1,1]'
    drinfeld-structure conjecture --p 2 --n 2
    drinfeld-structure census --p 2 --n 3 --format csv

Exit status: 0 success, 1 a predicate failed (counterexample in the report),
2 usage or parameter error, 3 a cap was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import datetime
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass

from . import config as caps
from .apoly import APoly
from .drinfeld import DrinfeldModule, lemma21_quotient, order_in_end
from .errors import CapExceeded, InternalConsistencyError, ParameterError
from .fields import FieldCtx, make_field
from .realize import Exhausted, RealizationTarget, census, enumerate_all, realize
from .structure import module_structure, verify_paper_predicates
from .torsion import conjecture_survey, frobenius_matrix

SCHEMA = 1
COMMANDS = ("analyze", "enumerate", "realize", "frobmatrix", "conjecture", "census")
POLY_FIELDS = ("a1", "a2", "a3", "i1", "i2", "rho", "a")
EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    s: int = 1
    n: int | None = None
    a1: object = None
    a2: object = None
    a3: object = None
    i1: object = None
    i2: object = None
    rho: object = None
    a: object = None
    kmax: int | None = None
    cap: int | None = None
    workers: int = 1
    format: str = "json"
    out: str | None = None
    no_timestamp: bool = False
    full: bool = False


# parsing helpers ------------------------------------------------------------------

def _json_arg(raw, name):
    if raw is None or not isinstance(raw, str):
        return raw
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        raise ParameterError(f"--{name} must be JSON, got {raw!r}")


def parse_element(data, L: FieldCtx, name="element"):
    """Field element of L from its F_q coordinate list (an int means an F_q constant)."""
    fq = L.fq
    if isinstance(data, int):
        data = [data]
    if not isinstance(data, list) or len(data) > L.degree_over_fq:
        raise ParameterError(f"{name} must be a list of at most {L.degree_over_fq} F_q coordinates")
    coords = []
    for c in data:
        if fq.s == 1:
            if not isinstance(c, int) or not 0 <= c < fq.p:
                raise ParameterError(f"{name}: coordinate {c!r} not in [0, {fq.p})")
            coords.append(c)
        else:
            if (not isinstance(c, list) or len(c) != fq.s
                    or not all(isinstance(x, int) and 0 <= x < fq.p for x in c)):
                raise ParameterError(f"{name}: coordinate {c!r} must be {fq.s} digits")
            coords.append(fq.encode(c))
    coords += [0] * (L.degree_over_fq - len(coords))
    return L.elem(L.from_fq_vector(coords))


def _need(cfg, *names):
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise ParameterError("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _field(cfg, n=None) -> FieldCtx:
    _need(cfg, "p")
    n = cfg.n if n is None else n
    if n is None or n < 1:
        raise ParameterError("--n must be a positive integer")
    if cfg.s < 1:
        raise ParameterError("--s must be a positive integer")
    return make_field(cfg.p, cfg.s, n)


def _module(cfg) -> DrinfeldModule:
    _need(cfg, "a1", "a2", "a3")
    L = _field(cfg)
    a = [parse_element(_json_arg(getattr(cfg, k), k), L, k) for k in ("a1", "a2", "a3")]
    return DrinfeldModule(L, *a)


def _poly(cfg, name, L, default=None) -> APoly:
    raw = getattr(cfg, name)
    if raw is None:
        if default is None:
            raise ParameterError(f"missing --{name}")
        raw = default
    return APoly.from_json(_json_arg(raw, name), L.fq)


@contextmanager
def _mapper(cfg):
    """``map`` or a process pool's map; the CLI is the only owner of worker pools."""
    if cfg.workers <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        yield pool.map


# commands -----------------------------------------------------------------------

def _analyze(cfg):
    D = _module(cfg)
    rec = verify_paper_predicates(D)
    result = rec.to_json()
    result["supersingular"] = None if rec.ordinary is None else not rec.ordinary
    out = {"result": result}
    if cfg.rho is not None:
        rho = _poly(cfg, "rho", D.ctx)
        g = lemma21_quotient(D, rho)
        info = {"rho": rho.to_json(), "lemma21_quotient": None if g is None else g.to_json()}
        try:
            info["order_in_end"] = order_in_end(D, rho)
        except ParameterError as exc:
            info["order_in_end"] = None
            info["order_in_end_precondition"] = str(exc)
        out["rho"] = info
    return (EXIT_OK if rec.passed else EXIT_FAILED), out, None


def _enumerate(cfg):
    _need(cfg, "p", "n")
    q = cfg.p**cfg.s
    _field(cfg)
    with _mapper(cfg) as mapper:
        records = list(enumerate_all(q, cfg.n, mapper=mapper))
    failed = [r for r in records if not r.record.passed]
    out = {"q": q, "n": cfg.n, "count": len(records), "failures": len(failed),
           "failed_records": [r.to_json() for r in failed],
           "records": [r.to_json() for r in records]}
    rows = [["index", "a1", "a2", "a3", "P", "m", "c", "mu", "i1", "i2", "chi", "ordinary", "passed"]]
    for r in records:
        j = r.to_json()
        rows.append([j["index"], j["a1"], j["a2"], j["a3"], j["P"], j["m"], j["c"], j["mu"],
                     j["i1"], j["i2"], j["chi"], j["ordinary"], j["passed"]])
    return (EXIT_FAILED if failed else EXIT_OK), out, _csv(rows)


def _realize(cfg):
    _need(cfg, "p")
    fq = make_field(cfg.p, cfg.s, 1)
    i1 = _poly(cfg, "i1", fq)
    i2 = _poly(cfg, "i2", fq, default=[1])
    target = RealizationTarget(fq.q, i1, i2)
    found = realize(target)
    if isinstance(found, Exhausted):
        out = found.to_json()
        return (EXIT_FAILED if found.admissible else EXIT_OK), out, None
    rec = verify_paper_predicates(found)
    return EXIT_OK, {"status": "realized", "target": target.to_json(),
                     "witness": rec.to_json()}, None


def _frobmatrix(cfg):
    D = _module(cfg)
    a = _poly(cfg, "a", D.ctx)
    fm = frobenius_matrix(D, a, kmax=cfg.kmax, point_cap=cfg.cap)
    ms = module_structure(D)
    from .apoly import gcd
    expected = [g for g in (gcd(a, ms.i2), gcd(a, ms.i1)) if g.degree > 0]
    fixed = fm.fixed_module_type()
    cp = D.charpoly
    out = {"module": D.to_json(), "frobenius_matrix": fm.to_json(),
           "trace_congruent_c": fm.trace == cp.c % a,
           "det_congruent_mu_Pm": fm.det == cp.constant_term % a,
           "fixed_submodule": [f.to_json() for f in fixed],
           "expected_fixed_submodule": [f.to_json() for f in expected]}
    ok = out["trace_congruent_c"] and out["det_congruent_mu_Pm"] and fixed == expected
    return (EXIT_OK if ok else EXIT_FAILED), out, None


def _conjecture(cfg):
    _need(cfg, "p", "n")
    _field(cfg)
    with _mapper(cfg) as mapper:
        report = conjecture_survey(cfg.p**cfg.s, cfg.n, kmax=cfg.kmax, point_cap=cfg.cap,
                                   mapper=mapper)
    return EXIT_OK, report.to_json(), None


def _census(cfg):
    _need(cfg, "p", "n")
    _field(cfg)
    with _mapper(cfg) as mapper:
        report = census(cfg.p**cfg.s, cfg.n, mapper=mapper)
    status = EXIT_FAILED if report.unrealized_admissible else EXIT_OK
    return status, report.to_json(full=cfg.full), report.to_csv()


def _csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow([json.dumps(x, separators=(",", ":")) if isinstance(x, (list, dict)) else x
                    for x in row])
    return buf.getvalue()


HANDLERS = {"analyze": _analyze, "enumerate": _enumerate, "realize": _realize,
            "frobmatrix": _frobmatrix, "conjecture": _conjecture, "census": _census}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a run; returns (exit status, report text)."""
    if cfg.command not in HANDLERS:
        return EXIT_USAGE, _error_doc(cfg, "usage", f"unknown command {cfg.command!r}")
    if cfg.format not in ("json", "csv"):
        return EXIT_USAGE, _error_doc(cfg, "usage", f"unknown format {cfg.format!r}")
    saved_cap = caps.ENUM_CAP
    if cfg.cap is not None and cfg.command in ("enumerate", "census", "realize"):
        caps.ENUM_CAP = cfg.cap
    try:
        status, doc, csv_text = HANDLERS[cfg.command](cfg)
    except ParameterError as exc:
        return EXIT_USAGE, _error_doc(cfg, "parameter", str(exc))
    except CapExceeded as exc:
        return EXIT_CAP, _error_doc(cfg, "cap_exceeded", str(exc))
    except InternalConsistencyError as exc:
        return EXIT_FAILED, _error_doc(cfg, "internal_consistency", str(exc))
    finally:
        caps.ENUM_CAP = saved_cap
    if cfg.format == "csv":
        if csv_text is None:
            return EXIT_USAGE, _error_doc(cfg, "usage", f"{cfg.command} has no CSV output")
        return status, csv_text
    return status, _dump(_envelope(cfg, doc))


def _params(cfg):
    d = dataclasses.asdict(cfg)
    for k in ("out", "format", "no_timestamp", "workers"):
        d.pop(k)
    out = {}
    for k, v in d.items():
        if v is None:
            continue
        if k in POLY_FIELDS:
            try:
                v = json.loads(v)
            except (TypeError, json.JSONDecodeError):
                pass
        out[k] = v
    return out


def _envelope(cfg, doc):
    out = {"schema": SCHEMA, "command": cfg.command, "params": _params(cfg), **doc}
    if not cfg.no_timestamp:
        out["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return out


def _error_doc(cfg, kind, message):
    return _dump(_envelope(cfg, {"error": {"kind": kind, "message": message}}))


def _dump(doc):
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# argv -> RunConfig ---------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="characteristic")
    common.add_argument("--s", type=int, help="q = p^s (default 1)")
    common.add_argument("--n", type=int, help="[L : F_q]")
    for name in ("a1", "a2", "a3"):
        common.add_argument(f"--{name}", help="field element as JSON list of F_q coordinates")
    for name, h in (("i1", "target invariant factor"), ("i2", "target invariant factor"),
                    ("rho", "prime of A for the division test"), ("a", "torsion modulus")):
        common.add_argument(f"--{name}", help=f"{h}, JSON coefficient list (low degree first)")
    common.add_argument("--kmax", type=int, help="largest extension degree searched for torsion")
    common.add_argument("--cap", type=int,
                        help="size cap: modules enumerated, or torsion points listed")
    common.add_argument("--workers", type=int, help="worker processes for enumerations")
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--no-timestamp", action="store_true", default=None,
                        help="omit generated_at, making output byte-reproducible")
    common.add_argument("--full", action="store_true", default=None,
                        help="census: include every record in the JSON report")
    common.add_argument("--config", help="JSON file of option values (flags override it)")

    parser = argparse.ArgumentParser(prog="drinfeld-structure", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def config_from_args(argv) -> RunConfig:
    argv = list(argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    file_cfg = {}
    if known.config:
        try:
            with open(known.config) as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParameterError(f"cannot read config {known.config}: {exc}")
        if not isinstance(file_cfg, dict):
            raise ParameterError("config file must hold a JSON object")
        file_cfg = {k.replace("-", "_"): v for k, v in file_cfg.items()}
        if not any(a in COMMANDS for a in argv) and "command" in file_cfg:
            argv.insert(0, file_cfg["command"])
    args = build_parser().parse_args(argv)
    if args.command is None:
        raise ParameterError(f"a command is required: one of {', '.join(COMMANDS)}")
    values = {}
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(file_cfg) - fields - {"config"}
    if unknown:
        raise ParameterError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for name in fields - {"command"}:
        v = getattr(args, name, None)
        if v is None:
            v = file_cfg.get(name)
        if v is not None:
            if name in POLY_FIELDS and not isinstance(v, str):
                v = json.dumps(v)
            values[name] = v
    return RunConfig(command=args.command, **values)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = config_from_args(argv)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    status, text = run(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
