"""Command-line interface, result cache and basis-list ingestion.

    python -m hitproblem dim -m 5 -n 18
    python -m hitproblem invariants -m 5 -n 18 --group gl
    python -m hitproblem --extended kameko -m 5 -n 41 --kernel

Cached bases live in ``$HITPROBLEM_CACHE_DIR`` (or ``--cache-dir``) as JSON
files carrying a format version and a SHA-256 of their payload.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field

from . import cohit, steenrod
from .cohit import CohitBasis, admissible_basis, normal_form
from .gf2core import Eliminator
from .monomials import (
    Polynomial,
    count_monomials,
    format_monomial,
    format_poly,
    parse_monomial,
    parse_poly,
    param_vector,
)

log = logging.getLogger("hitproblem")

CACHE_ENV = "HITPROBLEM_CACHE_DIR"
FORMAT_VERSION = 1
QUICK_COLUMNS = 50_000


class JobError(Exception):
    """A job that could not run (bad input, cap exceeded)."""


@dataclass
class JobSpec:
    command: str
    m: int | None = None
    n: int | None = None
    weight: tuple[int, ...] | None = None
    group: str = "gl"
    tier: str = "quick"
    cache_dir: str | None = None
    fmt: str = "text"
    options: dict = field(default_factory=dict)


# cache ---------------------------------------------------------------------

def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cache_path(cache_dir: str, m: int, n: int, r: int | None = None) -> str:
    return os.path.join(cache_dir, f"basis-m{m}-n{n}-r{'all' if r is None else r}.json")


def save_basis(cache_dir: str, basis: CohitBasis, r: int | None = None) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    payload = basis.to_json()
    doc = {
        "format_version": FORMAT_VERSION,
        "key": {"m": basis.m, "n": basis.n, "r": r},
        "checksum": hashlib.sha256(_canonical(payload).encode()).hexdigest(),
        "payload": payload,
    }
    path = cache_path(cache_dir, basis.m, basis.n, r)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, sort_keys=True, indent=1)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    return path


def load_basis(cache_dir: str, m: int, n: int, r: int | None = None) -> CohitBasis | None:
    """Cached basis, or None (with a warning) when the file is absent or unusable."""
    path = cache_path(cache_dir, m, n, r)
    if not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            doc = json.load(fh)
        if doc.get("format_version") != FORMAT_VERSION:
            raise ValueError(f"format version {doc.get('format_version')}")
        if doc.get("key") != {"m": m, "n": n, "r": r}:
            raise ValueError("key mismatch")
        payload = doc["payload"]
        digest = hashlib.sha256(_canonical(payload).encode()).hexdigest()
        if digest != doc.get("checksum"):
            raise ValueError("checksum mismatch")
        basis = CohitBasis.from_json(payload)
        if (basis.m, basis.n) != (m, n):
            raise ValueError("payload key mismatch")
        basis.check()
    except Exception as exc:
        log.warning("cache file %s is corrupt (%s); rebuilding", path, exc)
        return None
    return basis


def cached_basis(m: int, n: int, cache_dir: str | None) -> CohitBasis:
    if cache_dir is None or (m, n) in cohit._BASES:
        return admissible_basis(m, n)
    t0 = time.perf_counter()
    basis = load_basis(cache_dir, m, n)
    if basis is not None:
        log.info("cache hit %s (%.3f s)", cache_path(cache_dir, m, n), time.perf_counter() - t0)
        cohit._BASES[(m, n)] = basis
        return basis
    basis = admissible_basis(m, n)
    log.info("built basis (%d, %d) in %.3f s", m, n, time.perf_counter() - t0)
    save_basis(cache_dir, basis)
    return basis


# ingestion -----------------------------------------------------------------

def _parse_line(line: str, m: int):
    toks = line.split()
    if toks and all(t.isdigit() for t in toks):
        if len(toks) != m:
            raise ValueError(f"expected {m} exponents, got {len(toks)}")
        return tuple(int(t) for t in toks)
    return parse_monomial(line, m)


def ingest_basis_list(path: str, m: int, n: int) -> list[tuple[int, ...]]:
    """Monomials listed one per line, as text or as exponent tuples."""
    out = []
    seen: dict[tuple, int] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                x = _parse_line(line, m)
            except ValueError as exc:
                raise JobError(f"{path}:{lineno}: cannot parse {line!r}: {exc}") from None
            if sum(x) != n:
                raise JobError(f"{path}:{lineno}: degree {sum(x)} != {n}")
            if x in seen:
                raise JobError(f"{path}:{lineno}: duplicate of line {seen[x]}")
            seen[x] = lineno
            out.append(x)
    return out


# jobs ----------------------------------------------------------------------

def _wstr(w) -> str:
    return "(" + ",".join(map(str, w)) + ")"


def _parse_weight(s: str | None):
    if not s:
        return None
    body = s.strip().strip("()[]")
    try:
        return tuple(int(t) for t in body.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight vector {s!r}") from None


def _guard(spec: JobSpec, m: int, n: int) -> None:
    cols = count_monomials(m, n)
    if cols > QUICK_COLUMNS and spec.tier != "extended":
        raise JobError(f"({m}, {n}) has {cols} monomials, above the quick-tier limit "
                       f"{QUICK_COLUMNS}; pass --extended (needs several GB and hours)")


def _need(spec: JobSpec, *names):
    for name in names:
        if getattr(spec, name) is None:
            raise JobError(f"{spec.command} needs -{name}")


def _representative(m: int, n: int, group: str) -> tuple[str, Polynomial] | None:
    from .fixtures import load_fixture
    from .morphisms import kameko_up
    if group != "gl" or m != 5:
        return None
    if n == 18:
        return "xi_n0", load_fixture("xi_n0")
    if n == 41:
        return "phi(xi_n0) + xi_n1", kameko_up(load_fixture("xi_n0")) + load_fixture("xi_n1")
    return None


def _job_basis(spec: JobSpec, out: list[str]) -> bool:
    _need(spec, "m", "n")
    _guard(spec, spec.m, spec.n)
    b = cached_basis(spec.m, spec.n, spec.cache_dir)
    if spec.weight is not None:
        ws = [spec.weight]
    else:
        ws = list(reversed(b.weights()))
    if spec.fmt == "json":
        doc = b.to_json()
        if spec.weight is not None:
            doc["weights"] = [w for w in doc["weights"] if tuple(w["param"]) == spec.weight]
        out.append(json.dumps(doc, sort_keys=True, indent=1))
    elif spec.fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["weight", "monomial"])
        for w in ws:
            for x in b.by_weight.get(w, []):
                wr.writerow([_wstr(w), format_monomial(x)])
        out.append(buf.getvalue().rstrip("\n"))
    else:
        out.append(f"m={b.m} n={b.n} dim {b.dim} hit_rank {b.hit_rank}")
        for w in ws:
            xs = b.by_weight.get(w, [])
            out.append(f"weight {_wstr(w)} dim {len(xs)}")
            out.extend("  " + format_monomial(x) for x in xs)
    return True


def _job_dim(spec: JobSpec, out: list[str]) -> bool:
    from .oracles import ERRATA, dim_formula, stated_dim
    _need(spec, "m", "n")
    _guard(spec, spec.m, spec.n)
    b = cached_basis(spec.m, spec.n, spec.cache_dir)
    ok = True
    dims = b.weight_dims()
    ws = [spec.weight] if spec.weight is not None else list(dims)
    rows = []
    if spec.weight is None:
        rows.append(("total", b.dim, dim_formula(b.m, b.n), stated_dim(b.m, b.n), None))
    for w in ws:
        rows.append((_wstr(w), dims.get(w, 0), dim_formula(b.m, b.n, w),
                     stated_dim(b.m, b.n, w), (b.m, b.n, w)))
    data = []
    for label, e, f, st, key in rows:
        expect = st if st is not None else f
        if expect is None:
            status = "unchecked"
        elif expect == e:
            status = "ok"
        elif key in ERRATA or (key is None and any(k[:2] == (b.m, b.n) for k in ERRATA)):
            status = "erratum"
        else:
            status = "FAIL"
            ok = False
        data.append({"weight": label, "dim": e, "expected": expect, "status": status})
    if spec.fmt == "json":
        out.append(json.dumps({"m": b.m, "n": b.n, "dims": data}, sort_keys=True, indent=1))
    elif spec.fmt == "csv":
        out.append("weight,dim,expected,status")
        out.extend(f"\"{d['weight']}\",{d['dim']},{'' if d['expected'] is None else d['expected']},"
                   f"{d['status']}" for d in data)
    else:
        for d in data:
            tail = "" if d["expected"] is None else f" (expected {d['expected']}: {d['status']})"
            if d["weight"] == "total":
                out.append(f"dim {d['dim']}{tail}")
            else:
                out.append(f"weight {d['weight']} dim {d['dim']}{tail}")
    return ok


def _job_hit_test(spec: JobSpec, out: list[str]) -> bool:
    _need(spec, "m")
    try:
        f = parse_poly(spec.options["poly"], spec.m)
    except ValueError as exc:
        raise JobError(str(exc)) from None
    if not f:
        out.append("hit")
        return True
    _guard(spec, spec.m, f.degree)
    r = spec.options.get("level")
    if r is None:
        b = cached_basis(spec.m, f.degree, spec.cache_dir)
        nf = normal_form(f, b)
        hit = not nf.bits
    else:
        hit = steenrod.is_hit(f, r)
    out.append("hit" if hit else "not hit")
    if not hit and r is None:
        out.append("normal form: " + format_poly(cohit.coords_to_poly(nf, b)))
    return True


def _job_invariants(spec: JobSpec, out: list[str]) -> bool:
    from .invariants import action, invariant_subspace, weight_action
    _need(spec, "m", "n")
    _guard(spec, spec.m, spec.n)
    b = cached_basis(spec.m, spec.n, spec.cache_dir)
    if spec.weight is None:
        act = action(b, list(range(1, spec.m + 1)))
    else:
        act = weight_action(spec.m, spec.n, spec.weight)
    inv = invariant_subspace(act, spec.group)
    where = "" if spec.weight is None else f" weight={_wstr(spec.weight)}"
    out.append(f"invariants m={spec.m} n={spec.n} group={spec.group}{where}")
    out.append(f"dim {len(inv)}")
    for i, v in enumerate(inv, 1):
        out.append(f"basis {i}: {format_poly(act.to_polynomial(v))}")
    ok = True
    rep = _representative(spec.m, spec.n, spec.group) if spec.weight is None else None
    if rep is not None:
        name, f = rep
        nf = normal_form(f, b)
        el = Eliminator()
        for v in inv:
            el.add(v.bits)
        match = bool(nf.bits) and el.contains(nf.bits) and len(inv) == 1
        out.append(f"representative {name}: {'match' if match else 'MISMATCH'}")
        ok = match
    return ok


def _job_kameko(spec: JobSpec, out: list[str]) -> bool:
    _need(spec, "m", "n")
    _guard(spec, spec.m, spec.n)
    cached_basis(spec.m, spec.n, spec.cache_dir)
    try:
        src, rk = cohit.kameko_matrix_rank(spec.m, spec.n, spec.weight)
    except ValueError as exc:
        raise JobError(str(exc)) from None
    tgt = admissible_basis(spec.m, (spec.n - spec.m) // 2).dim
    out.append(f"kameko m={spec.m} n={spec.n} -> degree {(spec.n - spec.m) // 2}")
    out.append(f"source dim {src} target dim {tgt} rank {rk}")
    ok = spec.weight is not None or rk == tgt
    if not ok:
        out.append("FAIL: map is not onto")
    if spec.options.get("kernel"):
        out.append(f"kernel dim {src - rk}")
    return ok


def _job_sweep(spec: JobSpec, out: list[str]) -> bool:
    from .oracles import consistency_sweep, write_report
    cells = spec.options.get("cells") or [
        (m, n) for m in range(1, spec.options["m_max"] + 1)
        for n in range(1, spec.options["n_max"] + 1)]
    for m, n in cells:
        _guard(spec, m, n)
    rows = consistency_sweep(cells)
    path = spec.options.get("out")
    fmt = "json" if spec.fmt == "json" else "csv"
    if path:
        write_report(rows, path, fmt)
    if spec.fmt == "json":
        out.append(json.dumps(rows, sort_keys=True, indent=1))
    else:
        buf = io.StringIO()
        wr = csv.DictWriter(buf, fieldnames=["m", "n", "weight", "engine_dim", "formula_dim", "status"],
                            lineterminator="\n")
        wr.writeheader()
        wr.writerows(rows)
        out.append(buf.getvalue().rstrip("\n"))
    bad = [r for r in rows if r["status"] not in ("pass", "erratum")]
    summary = f"{len(rows)} checks, {len(bad)} failed, " \
              f"{sum(r['status'] == 'erratum' for r in rows)} errata"
    if spec.fmt == "json":
        log.info(summary)
    else:
        out.append(summary)
    return not bad


def _job_demo(spec: JobSpec, out: list[str]) -> bool:
    from .topomod import cp_quotient, modules_isomorphic, sphere_wedge
    n = spec.n
    if n is None:
        raise JobError("demo cp needs -n")
    try:
        cp = cp_quotient(n)
    except ValueError as exc:
        raise JobError(str(exc)) from None
    wedge = sphere_wedge([2 * n - 2, 2 * n])
    sq2 = cp.sq(2, 2 * n - 2)
    out.append(f"CP^{n}/CP^{n - 2}: classes in degrees {sorted(cp.dims)}")
    out.append(f"Sq^2: H^{2 * n - 2} -> H^{2 * n} is {'nonzero' if sq2 and sq2[0] else 'zero'}")
    iso = modules_isomorphic(cp, wedge)
    rel = "isomorphic to" if iso else "not isomorphic to"
    out.append(f"{rel} H*(S^{2 * n - 2} v S^{2 * n}) as A-modules")
    return True


def _job_crosscheck(spec: JobSpec, out: list[str]) -> bool:
    _need(spec, "m", "n")
    _guard(spec, spec.m, spec.n)
    got = ingest_basis_list(spec.options["file"], spec.m, spec.n)
    b = cached_basis(spec.m, spec.n, spec.cache_dir)
    ref = b.admissibles if spec.weight is None else b.by_weight.get(spec.weight, [])
    a, r = set(got), set(ref)
    only_file = sorted(a - r)
    only_engine = [x for x in ref if x not in a]
    where = "" if spec.weight is None else f" weight {_wstr(spec.weight)}"
    out.append(f"file {len(a)} monomials, engine{where} {len(r)} admissibles")
    for x in only_file:
        out.append(f"  only in file: {format_monomial(x)} weight {_wstr(param_vector(x))}")
    for x in only_engine:
        out.append(f"  only in engine: {format_monomial(x)}")
    same = a == r
    out.append("crosscheck " + ("passed" if same else
                                f"FAILED ({len(only_file)} + {len(only_engine)} differences)"))
    return same


_JOBS = {
    "basis": _job_basis,
    "dim": _job_dim,
    "hit-test": _job_hit_test,
    "invariants": _job_invariants,
    "kameko": _job_kameko,
    "sweep": _job_sweep,
    "demo": _job_demo,
    "crosscheck": _job_crosscheck,
}


def run(spec: JobSpec) -> tuple[int, str]:
    """Exit status (0 ok, 1 check failed, 2 job error) and the report text."""
    out: list[str] = []
    try:
        ok = _JOBS[spec.command](spec, out)
    except JobError as exc:
        return 2, "\n".join(out + [f"error: {exc}"])
    except (steenrod.DegreeMismatch, steenrod.OutsideFiltration, OverflowError) as exc:
        return 2, "\n".join(out + [f"error: {exc}"])
    except RuntimeError as exc:
        return 1, "\n".join(out + [f"FAIL: {exc}"])
    return (0 if ok else 1), "\n".join(out)


def _cell(s: str) -> tuple[int, int]:
    try:
        m, n = (int(t) for t in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cell must be m,n (got {s!r})") from None
    return m, n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hitproblem", description="mod-2 hit problem engine")
    p.add_argument("--extended", action="store_true",
                   help="allow jobs above the quick-tier size limit")
    p.add_argument("--cache-dir", default=None, help=f"basis cache (default ${CACHE_ENV})")
    p.add_argument("--checkpoint-dir", default=None,
                   help="snapshot long eliminations here so they can resume")
    p.add_argument("--checkpoint-every", type=int, default=50000)
    p.add_argument("--format", dest="fmt", choices=["text", "json", "csv"], default="text")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def mn(sp, need_n=True):
        sp.add_argument("-m", type=int, required=True)
        if need_n:
            sp.add_argument("-n", type=int, required=True)

    mn(sub.add_parser("basis", help="admissible basis grouped by weight"))
    sub.choices["basis"].add_argument("--weight", type=_parse_weight)
    mn(sub.add_parser("dim", help="dimension and weight dimensions"))
    sub.choices["dim"].add_argument("--weight", type=_parse_weight)
    sp = sub.add_parser("hit-test", help="is a polynomial hit")
    mn(sp, need_n=False)
    sp.add_argument("poly")
    sp.add_argument("-r", "--level", type=int, default=None,
                    help="only use Sq^(2^i) with i <= level")
    sp = sub.add_parser("invariants", help="Sigma_m or GL_m invariants")
    mn(sp)
    sp.add_argument("--group", choices=["sym", "gl"], default="gl")
    sp.add_argument("--weight", type=_parse_weight)
    sp = sub.add_parser("kameko", help="rank and kernel of the Kameko map")
    mn(sp)
    sp.add_argument("--kernel", action="store_true")
    sp.add_argument("--weight", type=_parse_weight)
    sp = sub.add_parser("sweep", help="engine versus closed forms")
    sp.add_argument("--m-max", type=int, default=4)
    sp.add_argument("--n-max", type=int, default=9)
    sp.add_argument("--cell", type=_cell, action="append", dest="cells")
    sp.add_argument("--out", default=None, help="also write the report here")
    sp = sub.add_parser("demo", help="worked examples")
    sp.add_argument("which", choices=["cp"])
    sp.add_argument("-n", type=int, required=True)
    sp = sub.add_parser("crosscheck", help="compare a monomial list with the engine")
    mn(sp)
    sp.add_argument("--file", required=True)
    sp.add_argument("--weight", type=_parse_weight)
    return p


def spec_from_args(args: argparse.Namespace) -> JobSpec:
    opts = {}
    for k in ("poly", "level", "kernel", "cells", "m_max", "n_max", "out", "file"):
        if hasattr(args, k):
            opts[k] = getattr(args, k)
    return JobSpec(
        command=args.command,
        m=getattr(args, "m", None),
        n=getattr(args, "n", None),
        weight=getattr(args, "weight", None),
        group=getattr(args, "group", "gl"),
        tier="extended" if args.extended else "quick",
        cache_dir=args.cache_dir or os.environ.get(CACHE_ENV) or None,
        fmt=args.fmt,
        options=opts,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if args.checkpoint_dir:
        steenrod.set_checkpoint(args.checkpoint_dir, args.checkpoint_every)
    status, text = run(spec_from_args(args))
    if text:
        stream = sys.stderr if status == 2 else sys.stdout
        print(text, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
