"""Command-line entry point: analyze, chain, simonis, bch, fcc and reproduce.

Results are JSON on stdout (or --json-out); logs go to stderr. A run manifest is written next
to --json-out as <json-out>.manifest.json.
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np
from pydantic import BaseModel

from src import __version__
from src.bch import (
    bch_create,
    bch_fcc_capability,
    bch_subcode,
    bch_summary,
    verify_dimension_claims,
    verify_strictness,
    verify_weight3_containment,
)
from src.chain import (
    LEVELS,
    VARIANTS,
    ChainSpec,
    chain_check_overlap,
    chain_expected_params,
    chain_generate,
    chain_rate,
)
from src.codes import load_code, max_distance, min_distance, save_code, weight_distribution
from src.config import Budgets
from src.distgraph import components, to_dot
from src.errors import InputError, StrictFccError
from src.fcc import (
    VERIFY_MODES,
    build_encoding,
    channel_trial,
    check_feasibility,
    decode,
    load_encoding,
    load_function,
    save_encoding,
    verify_encoding,
)
from src.field import field_for_order
from src.models import AnalysisReport, ChainReport, RunManifest
from src.reproduce import TARGETS, reproduce
from src.simonis import capability_table, one_position_insert, two_position_insert

logger = logging.getLogger(__name__)

FCC_ACTIONS = ("feasibility", "build", "verify", "decode", "channel")
BCH_CHECKS = ("containment", "dimensions", "strictness", "capability", "all")

# Alternative spellings accepted on the command line
CHECK_ALIASES = {"prop3": "gap2", "prop4": "gap4"}
VERIFY_ALIASES = {"thm5": "containment", "thm6": "dimensions"}
TARGET_ALIASES = {
    "ex3": "graph", "ex4": "cosets-binary", "ex5": "cosets-ternary",
    "tab4": "chains", "tab5": "chain-lengths", "ex7": "bch",
}


def _budgets(args) -> Budgets:
    return Budgets.from_env(enum=args.budget_enum, search=args.budget_search, threads=args.threads, seed=args.seed)


def _parse_word(text: str) -> list[int]:
    """'0,1,2' or '012' (single-digit alphabets) into integers."""
    try:
        return [int(x) for x in (text.split(",") if "," in text else text)]
    except ValueError as exc:
        raise InputError(f"Cannot read received word {text!r}") from exc


def _parse_fill(text: str | None):
    if text is None:
        return None
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"Fill pattern is not JSON: {exc}") from exc
    return tuple(tuple(r) if isinstance(r, list) else r for r in rows)


# --- Commands ---

def cmd_analyze(args) -> AnalysisReport:
    """Distances, truncated weight distribution and the components of G_alpha."""
    budgets = _budgets(args)
    code = load_code(args.code)
    w_max = args.w_max if code.size > budgets.enum else None
    d_min = min_distance(code, budgets.enum, w_max=w_max or code.n, search_budget=budgets.search,
                         pair_budget=budgets.pairs)
    d_max = max_distance(code, budgets.enum) if code.size <= budgets.enum else None
    dist = weight_distribution(code, w_max=w_max, budget=budgets.enum, search_budget=budgets.search)
    parts = components(code, args.alpha, budgets.enum, budgets.search, budgets.pairs, budgets.coset_cap)
    if args.dot:
        Path(args.dot).parent.mkdir(parents=True, exist_ok=True)
        Path(args.dot).write_text(to_dot(code, args.alpha, budgets.enum, budgets.pairs))
        args.outputs.append(args.dot)
    return AnalysisReport(
        n=code.n, q=code.q, kind=code.kind, k=code.k if code.is_linear else None, size=code.size,
        d_min=d_min, d_max=d_max, weight_distribution=dist.counts, alpha=args.alpha,
        subcode_dim=parts.subcode_dim, component_count=parts.block_count,
        component_sizes=parts.block_sizes, gamma=parts.block_size,
    )


def cmd_chain(args) -> ChainReport:
    budgets = _budgets(args)
    spec = ChainSpec(args.variant, args.k, args.d, args.s, field_for_order(args.q), fill=_parse_fill(args.fill))
    expected = chain_expected_params(spec, args.check) if args.check else None
    code = chain_generate(spec)
    if args.out:
        save_code(code, args.out)
        args.outputs.append(args.out)
    report = ChainReport(
        label=spec.label(), variant=spec.variant, q=spec.q, k=spec.k, d=spec.d, s=spec.s, n=spec.n,
        rate=str(chain_rate(spec)), overlap_ok={level: chain_check_overlap(spec, level) for level in LEVELS},
        expected_a_d=expected.a_d if expected else None,
    )
    if code.size <= budgets.enum:
        dist = weight_distribution(code, budget=budgets.enum)
        report.measured_d = min(w for w, c in dist.counts.items() if w > 0 and c > 0)
        report.measured_counts = {w: c for w, c in dist.counts.items() if c}
        if expected:
            report.matches_expected = (
                report.measured_d == spec.d and dist.a(spec.d) == expected.a_d
                and all(dist.a(w) == 0 for w in expected.zero_weights if w <= code.n)
            )
    return report


def cmd_simonis(args):
    budgets = _budgets(args)
    code = load_code(args.code)
    insert = one_position_insert if args.mode == "one" else two_position_insert
    result = insert(code, exhaustive=args.exhaustive, budget=budgets.enum, search_budget=budgets.search)
    if args.out:
        save_code(result.output, args.out)
        args.outputs.append(args.out)
    report = result.report()
    out = report
    if args.table:
        out = {"insertion": report.model_dump(mode="json"),
               "capability_before": [r.model_dump(mode="json") for r in
                                     capability_table(code, args.table, budgets.enum, budgets.search)],
               "capability_after": [r.model_dump(mode="json") for r in
                                    capability_table(result.output, args.table, budgets.enum, budgets.search)]}
    if args.report:
        path = Path(args.report)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(_jsonable(out), indent=2, ensure_ascii=False) + "\n")
        args.outputs.append(args.report)
    return out


def cmd_bch(args) -> dict:
    """Dimension claims, weight-3 containment, strictness and coset capacity of C_{1,2} over D."""
    budgets = _budgets(args)
    try:
        modulus = json.loads(args.modulus) if args.modulus else None
    except json.JSONDecodeError as exc:
        raise InputError(f"Modulus is not a JSON coefficient list: {exc}") from exc
    checks = BCH_CHECKS[:-1] if args.verify == "all" else (args.verify,)
    c12 = bch_create(args.p, args.m, (1, 2), modulus, args.primitive)
    out = {"c12": bch_summary(c12), "d": bch_summary(bch_subcode(args.p, args.m, modulus, args.primitive))}
    if "dimensions" in checks:
        out["dimensions"] = verify_dimension_claims(args.p, args.m)
    if "containment" in checks:
        out["containment"] = verify_weight3_containment(args.p, args.m, modulus, args.primitive,
                                                        pair_budget=budgets.pairs, threads=budgets.threads)
    if "strictness" in checks:
        out["strictness"] = verify_strictness(args.p, args.m, modulus, args.primitive, search_budget=budgets.search)
    if "capability" in checks:
        out["capability"] = bch_fcc_capability(args.p, args.m, modulus, args.primitive, budgets.search)
    out["passed"] = all(getattr(out[c], "passed", True) for c in checks if c in out)
    return out


def cmd_fcc(args):
    budgets = _budgets(args)
    code = load_code(args.code)
    f = load_function(args.function, code.field, code.k if code.is_linear else None)
    if args.action == "feasibility":
        return check_feasibility(code, f, args.dd, args.df, budgets.enum, budgets.search, budgets.pairs,
                                 budgets.grouping_nodes, budgets.coset_cap)
    if args.action == "build":
        report = check_feasibility(code, f, args.dd, args.df, budgets.enum, budgets.search, budgets.pairs,
                                   budgets.grouping_nodes, budgets.coset_cap)
        subcode = load_code(args.subcode) if args.subcode else None
        enc = build_encoding(code, f, report, subcode=subcode, path=args.path, budget=budgets.enum,
                             search_budget=budgets.search, pair_budget=budgets.pairs, cap=budgets.coset_cap)
        if not args.out:
            raise InputError("fcc build needs --out for the encoding descriptor")
        save_encoding(enc, args.out)
        args.outputs.append(args.out)
        return report
    if not args.encoding:
        raise InputError(f"fcc {args.action} needs --encoding")
    enc = load_encoding(args.encoding, code, f)
    if args.action == "verify":
        return verify_encoding(enc, args.mode, budgets.enum, budgets.search, budgets.pairs,
                               samples=args.samples, seed=budgets.seed)
    if args.action == "decode":
        if args.received is None:
            raise InputError("fcc decode needs --received")
        return {"target": args.target, "answer": list(decode(enc, np.array(_parse_word(args.received)), args.target))}
    return channel_trial(enc, args.error_weight, args.trials, budgets.seed, budgets.threads)


def cmd_reproduce(args):
    return reproduce(args.target, _budgets(args))


COMMAND_DISPATCH = {
    "analyze": cmd_analyze,
    "chain": cmd_chain,
    "simonis": cmd_simonis,
    "bch": cmd_bch,
    "fcc": cmd_fcc,
    "reproduce": cmd_reproduce,
}


# --- Output ---

def _jsonable(result):
    if isinstance(result, BaseModel):
        return result.model_dump(mode="json")
    if isinstance(result, dict):
        return {k: _jsonable(v) for k, v in result.items()}
    if isinstance(result, list):
        return [_jsonable(v) for v in result]
    return result


def _failed(result) -> bool:
    """True for verification-style results that report passed=False (None is not a failure)."""
    passed = result.get("passed") if isinstance(result, dict) else getattr(result, "passed", None)
    return passed is False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="strict-fcc", description="Strict function-correcting codes")
    parser.add_argument("--budget-enum", type=int, help="Largest code enumerated in full")
    parser.add_argument("--budget-search", type=int, help="Largest low-weight support search")
    parser.add_argument("--threads", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--json-out", help="Write the JSON result here instead of stdout")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Distances, weight distribution and G_alpha components")
    p.add_argument("code")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--w-max", type=int, help="Weight cap for codes too large to enumerate")
    p.add_argument("--dot", help="Write the distance graph as DOT")

    p = sub.add_parser("chain", help="Generate an open or closed chain code")
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--check", choices=(*LEVELS, *CHECK_ALIASES))
    p.add_argument("--fill", help="JSON list: per row a nonzero scalar or a list of d nonzero values")
    p.add_argument("--out", help="Write the code descriptor here")

    p = sub.add_parser("simonis", help="Converse-of-Simonis insertion")
    p.add_argument("--mode", choices=("one", "two"), required=True)
    p.add_argument("--in", dest="code", required=True)
    p.add_argument("--out")
    p.add_argument("--report", help="Write the insertion report here")
    p.add_argument("--exhaustive", action="store_true", help="Check every codeword using the inserted row")
    p.add_argument("--table", type=int, default=0, help="Also emit capability rows for d+1 .. d+TABLE")

    p = sub.add_parser("bch", help="BCH subcode checks")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--modulus", help="JSON coefficient list, constant term first")
    p.add_argument("--primitive", type=int)
    p.add_argument("--verify", choices=(*BCH_CHECKS, *VERIFY_ALIASES), default="all")

    p = sub.add_parser("fcc", help="Function-correcting encodings")
    p.add_argument("action", choices=FCC_ACTIONS)
    p.add_argument("--code", required=True)
    p.add_argument("--function", required=True)
    p.add_argument("--dd", type=int)
    p.add_argument("--df", type=int)
    p.add_argument("--encoding", help="Encoding descriptor to verify, decode with or simulate")
    p.add_argument("--subcode", help="Subcode descriptor for the structured path")
    p.add_argument("--path", choices=("auto", "table", "structured"), default="auto")
    p.add_argument("--out")
    p.add_argument("--mode", choices=VERIFY_MODES, default="exhaustive")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--received")
    p.add_argument("--target", choices=("data", "function"), default="data")
    p.add_argument("--error-weight", type=int, default=1)
    p.add_argument("--trials", type=int, default=10_000)

    p = sub.add_parser("reproduce", help="Recompute the worked examples")
    p.add_argument("--target", choices=(*TARGETS, *TARGET_ALIASES, "all"), default="all")
    return parser


def _resolve_aliases(args) -> None:
    for name, aliases in (("check", CHECK_ALIASES), ("verify", VERIFY_ALIASES), ("target", TARGET_ALIASES)):
        value = getattr(args, name, None)
        if value in aliases:
            setattr(args, name, aliases[value])


def _inputs(args) -> list[str]:
    names = ("code", "function", "encoding", "subcode")
    return [str(getattr(args, n)) for n in names if getattr(args, n, None)]


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _resolve_aliases(args)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.command == "fcc" and args.action in ("feasibility", "build") and (args.dd is None or args.df is None):
        parser.error(f"fcc {args.action} needs --dd and --df")
    args.outputs = []
    start = time.time()
    try:
        result = COMMAND_DISPATCH[args.command](args)
    except StrictFccError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    text = json.dumps(_jsonable(result), indent=2, ensure_ascii=False)
    if args.json_out:
        out = Path(args.json_out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text + "\n")
        args.outputs.append(str(out))
        parameters = {k: v for k, v in vars(args).items() if k not in ("outputs", "json_out")}
        manifest = RunManifest(
            subcommand=args.command, inputs=_inputs(args), parameters=parameters,
            seed=_budgets(args).seed, outputs=args.outputs, version=__version__,
            wall_clock_ms=int((time.time() - start) * 1000),
        )
        out.with_name(out.name + ".manifest.json").write_text(manifest.model_dump_json(indent=2) + "\n")
    else:
        print(text)
    logger.info("%s finished in %d ms", args.command, int((time.time() - start) * 1000))
    return 1 if _failed(result) else 0


if __name__ == "__main__":
    sys.exit(main())
