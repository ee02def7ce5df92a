"""Command-line front end.

Exit codes: 0 when every executed check passes, 1 when a check fails, 2 on
usage errors. Reports carry the twist sign and v_unit candidates that
survive on the store used, so every report says which conventions it ran
under.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .cache import TableCache
from .functors import candidate_units, fuzz_shift_identity, surviving_units, theorem_instances, \
    unit_value, verify_main_theorem
from .gf import field_make
from .green import report_json, surviving_twist_signs, sweep_green
from .hall import HallElement, hall_comultiply, serre_defect
from .quiver import PRESETS, DimVector, Quiver, preset_quiver
from .reps import DEFAULT_BUDGET, BudgetExceeded, TableStore

log = logging.getLogger("ringel_hall")

SHIFT_QUIVERS = ("a2", "kronecker", "jordan", "d4")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    quiver: Quiver | None
    q: int
    max_dim: int
    budget: int
    seed: int = 0
    samples: int = 1000
    fmt: str = "tsv"
    out: Path | None = None
    cache_dir: str | None = None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.max_dim < 0:
            raise UsageError("--max-dim must be nonnegative")
        if self.budget <= 0 or self.samples <= 0:
            raise UsageError("--budget and --samples must be positive")
        try:
            field_make(self.q)
        except ValueError as exc:
            raise UsageError(str(exc)) from None


def _dim_arg(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(p) for p in text.split(",") if p.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension vector {text!r}") from None
    if not parts or any(p < 0 for p in parts):
        raise argparse.ArgumentTypeError(f"bad dimension vector {text!r}")
    return parts


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--quiver", choices=sorted(PRESETS), help="preset quiver")
    src.add_argument("--quiver-file", type=Path, help="quiver JSON file")
    common.add_argument("--q", type=int, default=2, help="field size (prime power)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max points enumerated per table")
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")
    common.add_argument("--cache-dir", help="table cache directory (default: $HALL_CACHE_DIR)")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="ringel-hall", description="Exact Ringel-Hall algebra checks over finite fields.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="build an iso-class table")
    e.add_argument("--dim", type=_dim_arg, required=True)

    h = sub.add_parser("hall", parents=[common], help="product and coproduct of basis elements")
    h.add_argument("--alpha", type=_dim_arg, required=True)
    h.add_argument("--alpha-class", type=int, default=0)
    h.add_argument("--beta", type=_dim_arg)
    h.add_argument("--beta-class", type=int, default=0)

    g = sub.add_parser("green", parents=[common], help="Green's formula sweep")
    g.add_argument("--max-dim", type=int, default=3)

    sub.add_parser("serre", parents=[common], help="quantum Serre relations")

    t = sub.add_parser("theorem", parents=[common], help="restriction-of-induction identity on class functions")
    t.add_argument("--alpha", type=_dim_arg)
    t.add_argument("--beta", type=_dim_arg)
    t.add_argument("--alphap", type=_dim_arg)
    t.add_argument("--betap", type=_dim_arg)
    t.add_argument("--alpha-class", type=int, help="restrict A to this class (default: all classes)")
    t.add_argument("--beta-class", type=int, help="restrict B to this class (default: all classes)")
    t.add_argument("--sweep", action="store_true", help="check every instance up to --max-dim")
    t.add_argument("--max-dim", type=int, default=None)

    s = sub.add_parser("shifts", parents=[common], help="shift-constant identity fuzz")
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--max-entry", type=int, default=20)
    s.add_argument("--literal-n", action="store_true",
                   help="use the a2*a2 vertex term in N (expected to fail)")

    b = sub.add_parser("bialgebra", parents=[common], help="twisted bialgebra sign sweep")
    b.add_argument("--max-dim", type=int, default=3)
    return p


def _load_quiver(args, default: str | None = "a2") -> Quiver | None:
    if args.quiver_file:
        try:
            return Quiver.from_json(json.loads(args.quiver_file.read_text()))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read quiver file {args.quiver_file}: {exc}") from None
    name = args.quiver or default
    return preset_quiver(name) if name else None


def _dim(Q: Quiver, v) -> DimVector:
    try:
        return Q.dim(v)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        cfg.out.write_text(text)
    else:
        sys.stdout.write(text)


def _store(cfg: RunConfig) -> TableStore:
    return TableStore(cfg.quiver, cfg.q, cfg.budget, cache=TableCache.from_env(cfg.cache_dir))


def _conventions(store: TableStore, bound: int) -> dict:
    signs = surviving_twist_signs(store, bound)
    units = surviving_units([store], [bound])
    return {
        "bound": bound,
        "twist_sign": signs[0] if len(signs) == 1 else None,
        "twist_sign_survivors": signs,
        "v_unit": units[0] if len(units) == 1 else None,
        "v_unit_survivors": units,
    }


def _conventions_tsv(conv: dict) -> str:
    return "\n".join(f"# {k}\t{json.dumps(v)}" for k, v in conv.items())


def _fmt_key(k) -> str:
    return f"{','.join(map(str, k[0]))}#{k[1]}"


# commands ------------------------------------------------------------------

def cmd_enumerate(cfg: RunConfig) -> int:
    store = _store(cfg)
    table = store.table(_dim(cfg.quiver, cfg.options["dim"]))
    table.validate()
    if cfg.fmt == "json" or (cfg.out and cfg.out.suffix == ".json"):
        _emit(cfg, json.dumps(table.to_json(), sort_keys=True, indent=1))
    else:
        lines = ["class\torbit\taut\trep"]
        lines += [f"{c.id}\t{c.orbit}\t{c.aut}\t{json.dumps([m.tolist() for m in c.rep.mats])}" for c in table.classes]
        _emit(cfg, "\n".join(lines))
    log.info("%d classes in dim %s over GF(%d)", len(table), tuple(table.dim), cfg.q)
    return 0


def cmd_hall(cfg: RunConfig) -> int:
    store = _store(cfg)
    o = cfg.options
    a = (_dim(cfg.quiver, o["alpha"]), o["alpha_class"])
    try:
        ua = HallElement.basis(store, a)
        out = {"alpha": _fmt_key(a), "coproduct": [
            {"left": _fmt_key(x), "right": _fmt_key(y), **c.to_json()}
            for (x, y), c in sorted(hall_comultiply(ua).terms.items(), key=lambda kv: _fmt_key(kv[0][0]) + _fmt_key(kv[0][1]))]}
        if o.get("beta") is not None:
            b = (_dim(cfg.quiver, o["beta"]), o["beta_class"])
            out["beta"] = _fmt_key(b)
            out["product"] = (ua * HallElement.basis(store, b)).to_json()
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(out, sort_keys=True, indent=1))
    else:
        lines = ["kind\tterm\ta\tb"]
        for t in out.get("product", []):
            lines.append(f"product\t{','.join(map(str, t['dim']))}#{t['class']}\t{t['a']}\t{t['b']}")
        for t in out["coproduct"]:
            lines.append(f"coproduct\t{t['left']}|{t['right']}\t{t['a']}\t{t['b']}")
        _emit(cfg, "\n".join(lines))
    return 0


def cmd_green(cfg: RunConfig) -> int:
    store = _store(cfg)
    report = sweep_green(store, cfg.max_dim)
    conv = _conventions(store, cfg.max_dim)
    if cfg.fmt == "json":
        _emit(cfg, report_json(report, conventions=conv))
    else:
        _emit(cfg, _conventions_tsv(conv) + "\n" + report.to_tsv())
    log.info("green: %d instances, all_equal=%s", len(report.instances), report.all_equal)
    return 0 if report.all_equal else 1


def cmd_serre(cfg: RunConfig) -> int:
    store = _store(cfg)
    Q = cfg.quiver
    rows = []
    for i in Q.vertices:
        for j in Q.vertices:
            if i == j or Q.has_loop(i) or Q.has_loop(j):
                continue
            d = serre_defect(store, i, j)
            rows.append({"i": i, "j": j, "zero": not d, "defect": d.to_json()})
    if not rows:
        raise UsageError("the quiver has no pair of distinct loop-free vertices")
    ok = all(r["zero"] for r in rows)
    conv = _conventions(store, 2)
    if cfg.fmt == "json":
        _emit(cfg, json.dumps({"quiver": Q.to_json(), "q": cfg.q, "all_zero": ok, "pairs": rows,
                               "conventions": conv}, sort_keys=True, indent=1))
    else:
        lines = [_conventions_tsv(conv), "i\tj\tzero"] + [f"{r['i']}\t{r['j']}\t{str(r['zero']).lower()}" for r in rows]
        _emit(cfg, "\n".join(lines))
    return 0 if ok else 1


def cmd_theorem(cfg: RunConfig) -> int:
    store = _store(cfg)
    Q, o = cfg.quiver, cfg.options
    if o["sweep"]:
        bound = cfg.max_dim if o["max_dim"] is not None else 3
        instances = list(theorem_instances(store, bound))
    else:
        missing = [n for n in ("alpha", "beta", "alphap", "betap") if o.get(n) is None]
        if missing:
            raise UsageError("theorem needs --" + ", --".join(missing) + " (or --sweep)")
        alpha, beta = _dim(Q, o["alpha"]), _dim(Q, o["beta"])
        alphap, betap = _dim(Q, o["alphap"]), _dim(Q, o["betap"])
        if alpha + beta != alphap + betap:
            raise UsageError("alpha + beta must equal alphap + betap")
        bound = o["max_dim"] if o["max_dim"] is not None else (alpha + beta).total
        As = [(alpha, o["alpha_class"])] if o["alpha_class"] is not None else store.classes(alpha)
        Bs = [(beta, o["beta_class"])] if o["beta_class"] is not None else store.classes(beta)
        for k in As + Bs:
            if not 0 <= k[1] < len(store.table(k[0])):
                raise UsageError(f"no class {k[1]} in dimension {tuple(k[0])}")
        instances = [(A, B, alphap, betap) for A in As for B in Bs]
    conv = _conventions(store, bound)
    alive = conv["v_unit_survivors"]
    rows = []
    for inst in instances:
        results = {name: verify_main_theorem(store, *inst, unit_value(name, cfg.q)).equal for name, _ in candidate_units(cfg.q)}
        rows.append((inst, results))
    passed = bool(alive) and all(all(r[n] for n in alive) for _, r in rows)
    unique = len(alive) == 1
    ok = passed and (unique or not o["sweep"])
    names = [n for n, _ in candidate_units(cfg.q)]
    if cfg.fmt == "json":
        data = {"quiver": Q.to_json(), "q": cfg.q, "bound": bound, "passed_at_survivors": passed,
                "v_unit_unique": unique, "conventions": conv,
                "instances": [{"A": _fmt_key(i[0]), "B": _fmt_key(i[1]), "alphap": list(i[2]),
                               "betap": list(i[3]), "equal": r} for i, r in rows]}
        _emit(cfg, json.dumps(data, sort_keys=True, indent=1))
    else:
        lines = [_conventions_tsv(conv), f"# v_unit_unique\t{str(unique).lower()}",
                 "A\tB\talphap\tbetap\t" + "\t".join(names)]
        for i, r in rows:
            lines.append("\t".join([_fmt_key(i[0]), _fmt_key(i[1]), ",".join(map(str, i[2])),
                                    ",".join(map(str, i[3]))] + [str(r[n]).lower() for n in names]))
        _emit(cfg, "\n".join(lines))
    if not unique:
        log.warning("v_unit is not unique: %s survive", alive)
    return 0 if ok else 1


def cmd_shifts(cfg: RunConfig) -> int:
    o = cfg.options
    quivers = [cfg.quiver] if cfg.quiver is not None else [preset_quiver(n) for n in SHIFT_QUIVERS]
    rows = []
    t0 = time.perf_counter()
    for Q in quivers:
        passed, total = fuzz_shift_identity(Q, cfg.samples, cfg.seed, o["max_entry"], o["literal_n"])
        rows.append((Q, passed, total))
    elapsed = time.perf_counter() - t0
    log.info("shift fuzz took %.2fs", elapsed)
    ok = all(p == t for _, p, t in rows)
    names = {Q.content_hash(): n for n, Q in ((n, preset_quiver(n)) for n in PRESETS)}
    if cfg.fmt == "json":
        data = {"seed": cfg.seed, "samples": cfg.samples, "literal_n": o["literal_n"], "all_pass": ok,
                "quivers": [{"quiver": names.get(Q.content_hash(), Q.content_hash()), "passed": p, "total": t}
                            for Q, p, t in rows]}
        _emit(cfg, json.dumps(data, sort_keys=True, indent=1))
    else:
        lines = ["quiver\tpassed\ttotal"] + [f"{names.get(Q.content_hash(), Q.content_hash())}\t{p}\t{t}"
                                             for Q, p, t in rows]
        _emit(cfg, "\n".join(lines))
    return 0 if ok else 1


def cmd_bialgebra(cfg: RunConfig) -> int:
    store = _store(cfg)
    conv = _conventions(store, cfg.max_dim)
    signs = conv["twist_sign_survivors"]
    if cfg.fmt == "json":
        _emit(cfg, json.dumps({"quiver": cfg.quiver.to_json(), "q": cfg.q, "conventions": conv},
                              sort_keys=True, indent=1))
    else:
        _emit(cfg, _conventions_tsv(conv))
    if len(signs) > 1:
        log.warning("both twist signs survive; this quiver cannot tell them apart")
    return 0 if signs else 1


COMMANDS = {
    "enumerate": cmd_enumerate,
    "hall": cmd_hall,
    "green": cmd_green,
    "serre": cmd_serre,
    "theorem": cmd_theorem,
    "shifts": cmd_shifts,
    "bialgebra": cmd_bialgebra,
}


def run_cli(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        quiver = _load_quiver(args, default=None if args.command == "shifts" else "a2")
        cfg = RunConfig(
            command=args.command,
            quiver=quiver,
            q=args.q,
            max_dim=getattr(args, "max_dim", None) or 0,
            budget=args.budget,
            seed=args.seed,
            samples=getattr(args, "samples", 1000),
            fmt=args.format,
            out=args.out,
            cache_dir=args.cache_dir,
            options=vars(args),
        )
        return COMMANDS[args.command](cfg)
    except (UsageError, BudgetExceeded) as exc:
        parser.print_usage(sys.stderr)
        print(f"ringel-hall: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())
