"""Command line front end: ``engine run|corpus|schema``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Tuple

from . import __version__
from .coefficients import format_fraction
from .errors import AssumptionViolation, SchemaError
from .homology import h_dim, jacobian_presentation
from .schema import SESSION_SCHEMA, Session, load_session
from .tensor import build_gl_morphism, build_preprojective, check_d_squared


def _differential_table(p) -> list:
    T = p.T
    rows = []
    for i in sorted(p.d_letters, key=lambda k: T.reg[k].name):
        rows.append({"letter": T.reg[i].name, "d": T.to_json(p.d_letters[i])})
    return rows


def _preprojective(s: Session):
    reg = s.registry()
    return build_preprojective(reg, s.eta(reg), s.potential(), s.d, s.N, z_names=s.z_names())


def _task_build(s: Session, task: dict) -> Tuple[str, dict, list]:
    p = _preprojective(s)
    return "ok", {"differential": _differential_table(p)}, []


def _task_d2(s: Session, task: dict):
    p = _preprojective(s)
    rep = check_d_squared(p)
    return ("ok" if rep["ok"] else "violated"), {"d_squared_zero": rep["ok"]}, rep["failures"]


def _task_hdim(s: Session, task: dict):
    p = _preprojective(s)
    degree = task.get("degree", 0)
    N = task.get("N", s.N)
    a, b = h_dim(p, degree, N), h_dim(p, degree, N + 1)
    values = {"degree": degree, "dim": a, "levels": [N, N + 1], "values": [a, b], "stable": a == b}
    return ("ok" if a == b else "truncation_insufficient"), values, []


def _task_jacobian(s: Session, task: dict):
    p = _preprojective(s)
    data = jacobian_presentation(p, task.get("N", s.N))
    st = data.stabilized
    values = {"dimension": data.dim, "stable": st.stable, "levels": list(st.witness_levels),
              "values": list(st.values),
              "basis": [p.T.word_names(w) for w in data.basis]}
    return ("ok" if st.stable else "truncation_insufficient"), values, []


def _task_gl(s: Session, task: dict):
    specs = s.letter_specs()
    frozen = s.ring.frozen
    f_names = task.get("frozen_letters")
    if f_names is None:
        f_names = [x["name"] for x in specs if x["source"] in frozen and x["target"] in frozen]
    n_names = [x["name"] for x in specs if x["name"] not in set(f_names)]
    g = build_gl_morphism(s.ring, specs, f_names, n_names, s.eta_names(), s.potential(),
                          s.potential("potential_frozen"), s.d, s.N, s.z_names())
    Ts = g.source.T
    images = [{"letter": Ts.reg[i].name, "image": g.target.T.to_json(g.images[i])}
              for i in sorted(g.images, key=lambda k: Ts.reg[k].name)]
    defect = g.chain_map_defect()
    values = {"images": images, "source_differential": _differential_table(g.source),
              "target_differential": _differential_table(g.target), "chain_map": not defect}
    return ("ok" if not defect else "violated"), values, defect


TASKS = {
    "build_preprojective": _task_build,
    "check_d_squared": _task_d2,
    "h_dim": _task_hdim,
    "jacobian_presentation": _task_jacobian,
    "gl_morphism": _task_gl,
}


def _jsonable(x):
    from fractions import Fraction
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def run_document(doc: dict) -> Tuple[int, dict]:
    """Return (exit code, report)."""
    task_name = doc.get("task", {}).get("name") if isinstance(doc, dict) and \
        isinstance(doc.get("task"), dict) else None
    try:
        session = load_session(doc)
        status, values, witnesses = TASKS[session.doc["task"]["name"]](session, session.doc["task"])
        code = 0
    except SchemaError as exc:
        return 2, {"task": task_name, "status": "schema_error", "values": {},
                   "witnesses": [str(exc)], "engine_version": __version__}
    except AssumptionViolation as exc:
        w = [str(exc)] + ([_jsonable(exc.witness)] if exc.witness is not None else [])
        return 1, {"task": task_name, "status": "violated", "values": {}, "witnesses": w,
                   "engine_version": __version__, "error": type(exc).__name__}
    return code, _jsonable({"task": task_name, "status": status, "values": values,
                            "witnesses": witnesses, "engine_version": __version__})


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


def _read(path: Path):
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="engine", description="dg preprojective algebra engine")
    sub = parser.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="run one session document")
    r.add_argument("file")
    c = sub.add_parser("corpus", help="run every *.json document in a directory")
    c.add_argument("dir")
    sub.add_parser("schema", help="print the session JSON schema")
    args = parser.parse_args(argv)

    if args.cmd == "schema":
        print(json.dumps(SESSION_SCHEMA, sort_keys=True, indent=2))
        return 0
    if args.cmd == "run":
        try:
            doc = _read(Path(args.file))
        except (SchemaError, OSError) as exc:
            print(dumps({"status": "schema_error", "witnesses": [str(exc)],
                         "engine_version": __version__}))
            return 2
        code, report = run_document(doc)
        print(dumps(report))
        return code
    reports = {}
    worst = 0
    for path in sorted(Path(args.dir).glob("*.json")):
        try:
            code, report = run_document(_read(path))
        except SchemaError as exc:
            code, report = 2, {"status": "schema_error", "witnesses": [str(exc)]}
        reports[path.name] = report
        worst = max(worst, code)
    print(dumps(reports))
    return worst


if __name__ == "__main__":
    sys.exit(main())
