import argparse
import json
import logging
import sys
from typing import Any, List, Optional

import classification
import demo
from errors import (
    BudgetExceeded,
    DetNotOne,
    NoSmallRemainder,
    NotAUnit,
    NotInvertible,
    NotUnimodular,
    RingMismatch,
    SpecError,
    TooLarge,
    VerificationFailed,
)
from ge2 import UmPair, evaluate, factor_sl2, random_sl2, random_um_pair, reduce_pair, verify
from ge_types import DEFAULT_BUDGET, DEFAULT_DEMO_JOBS, DEFAULT_WORKERS, DEMO_BOUND, DEMO_WORD_LENGTH, Command, JobSpec, ReductionStats
from logging_setup import configure_logging
from reports import demo_markdown_table, write_json, write_markdown_table
from version import __version__
from zcge_io import codec
from zcge_io.fs import load_json_arg

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3
EXIT_VERIFICATION = 4

PRECONDITION_ERRORS = (NotUnimodular, DetNotOne, NotAUnit, NotInvertible, NoSmallRemainder, TooLarge)
# finite rings are factored as n x n matrices up to this size
MAX_FINITE_N = 4
# the flag whose JSON document each command works on
PAYLOAD_FLAGS = {Command.REDUCE: "pair", Command.FACTOR: "matrix", Command.VERIFY: "word"}


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def emit(document: Any, human: bool = False) -> None:
    print(json.dumps(document, indent=2 if human else None))


def job_from_args(args) -> JobSpec:
    """Collect the parsed flags; the ring spec and the payload are loaded but not yet validated."""
    command = Command(args.cmd)
    ring = load_json_arg(args.ring, "--ring") if command is not Command.DEMO else {}
    flag = PAYLOAD_FLAGS.get(command)
    payload = load_json_arg(getattr(args, flag), f"--{flag}") if flag else None
    return JobSpec(
        command=command,
        ring=ring,
        payload=payload,
        seed=getattr(args, "seed", 0),
        budget=getattr(args, "budget", DEFAULT_BUDGET),
        bound=getattr(args, "bound", DEMO_BOUND),
    )


def cmd_reduce(args, job: JobSpec, ring) -> int:
    pair = codec.pair_from_json(ring, job.payload)
    stats = ReductionStats()
    word = reduce_pair(ring, pair, job.budget, stats)
    emit({
        "word": codec.word_to_json(ring, word),
        "length": len(word),
        "fallback_used": stats.fallback_used,
        "verified": verify(word, pair, UmPair.unit(ring)),
    }, args.human)
    return EXIT_OK


def cmd_factor(args, job: JobSpec, ring) -> int:
    raw = job.payload
    if ring.kind == "finite":
        import finitering
        M = codec.square_from_json(ring, raw)
        if not 2 <= len(M) <= MAX_FINITE_N:
            raise SpecError(f"finite-ring matrices must be n x n with 2 <= n <= {MAX_FINITE_N}")
        diag, word = finitering.factor_gln_finite(ring, M)
        emit({
            "diag": [ring.element_to_json(u) for u in diag],
            "word": codec.word_to_json(ring, word),
            "length": len(word),
        }, args.human)
        return EXIT_OK
    M = codec.mat2_from_json(ring, raw)
    word = factor_sl2(ring, M, job.budget)
    emit({"word": codec.word_to_json(ring, word), "length": len(word)}, args.human)
    return EXIT_OK


def cmd_verify(args, job: JobSpec, ring) -> int:
    word = codec.word_from_json(ring, job.payload)
    if args.matrix:
        M = codec.mat2_from_json(ring, load_json_arg(args.matrix, "--matrix"))
        ok = evaluate(word) == M
    else:
        if not args.start:
            raise SpecError("verify needs --start (and optionally --end) or --matrix")
        start = codec.pair_from_json(ring, load_json_arg(args.start, "--start"))
        end = codec.pair_from_json(ring, load_json_arg(args.end, "--end")) if args.end else UmPair.unit(ring)
        ok = verify(word, start, end)
    emit({"verified": ok}, args.human)
    return EXIT_OK if ok else EXIT_VERIFICATION


def cmd_classify(args, job: JobSpec, ring) -> int:
    if ring.kind != "od":
        raise SpecError(f"classify needs an od or group_ring spec, got {ring.kind}")
    table = classification.classify_ring(ring)
    log = logging.getLogger("cli")
    if args.output:
        classification.write_classification_csv(args.output, [table])
        log.info(f"CSV results saved to {args.output}")
    if args.output_md:
        classification.write_classification_markdown(args.output_md, [table])
        log.info(f"Markdown results saved to {args.output_md}")
    if args.human:
        print(classification.markdown_table([table]), end="")
    else:
        emit(table)
    return EXIT_OK


def cmd_gen(args, job: JobSpec, ring) -> int:
    if args.matrix:
        M = random_sl2(ring, job.seed, args.len, job.bound)
        emit({"ring": ring.spec(), "matrix": codec.matrix_to_json(ring, M)}, args.human)
    else:
        pair = random_um_pair(ring, job.seed, args.len, job.bound)
        emit({"ring": ring.spec(), "pair": codec.pair_to_json(ring, pair)}, args.human)
    return EXIT_OK


def cmd_demo(args, job: JobSpec, ring=None) -> int:
    report = demo.run_demo(args.n, args.k, job.seed, job.budget, args.workers, progress=not args.no_progress)
    if args.out:
        write_json(args.out, report)
        logging.getLogger("cli").info(f"Report saved to {args.out}")
    if args.output_md:
        write_markdown_table(args.output_md, report)
    if args.human:
        print(demo_markdown_table(report), end="")
    else:
        emit(report)
    return EXIT_OK if report["all_verified"] else EXIT_VERIFICATION


HANDLERS = {
    Command.REDUCE: cmd_reduce,
    Command.FACTOR: cmd_factor,
    Command.VERIFY: cmd_verify,
    Command.CLASSIFY: cmd_classify,
    Command.GEN: cmd_gen,
    Command.DEMO: cmd_demo,
}


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="zcge", description="Elementary-matrix reduction over quotients of Z[C_n]")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def ring_parser(name: str, help_text: str) -> ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--ring", required=True, help="Ring spec: JSON file or inline JSON")
        p.add_argument("--human", action="store_true", help="Human-readable output")
        return p

    p_reduce = ring_parser("reduce", help_text="Reduce a unimodular pair to (1, 0)")
    p_reduce.add_argument("--pair", required=True, help="Pair as [first, second]")
    p_reduce.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="Search states per reduction")

    p_factor = ring_parser("factor", help_text="Factor a matrix into elementary matrices")
    p_factor.add_argument("--matrix", required=True, help="Square matrix as an array of rows")
    p_factor.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p_verify = ring_parser("verify", help_text="Check a word against a pair or a matrix")
    p_verify.add_argument("--word", required=True)
    p_verify.add_argument("--start", help="Start pair")
    p_verify.add_argument("--end", help="End pair (default: [1, 0])")
    p_verify.add_argument("--matrix", help="Check evaluate(word) against this 2x2 matrix instead")

    p_classify = ring_parser("classify", help_text="Case table (e, eta_e, tag) for O(D)")
    p_classify.add_argument("--output", help="Output CSV file path")
    p_classify.add_argument("--output-md", help="Output markdown table file path")

    p_gen = ring_parser("gen", help_text="Seeded unimodular pair or SL2 matrix")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--len", type=int, default=DEMO_WORD_LENGTH, help="Random word length")
    p_gen.add_argument("--bound", type=int, default=DEMO_BOUND, help="Entry coefficient bound")
    p_gen.add_argument("--matrix", action="store_true", help="Emit an SL2 matrix instead of a pair")

    p_demo = sub.add_parser("demo", help="Reduce and factor over every O(D) with D within divisors(n)")
    p_demo.add_argument("n", type=int)
    p_demo.add_argument("--k", type=int, default=DEFAULT_DEMO_JOBS, help="Jobs per subset")
    p_demo.add_argument("--seed", type=int, default=0)
    p_demo.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_demo.add_argument("--workers", type=int, default=DEFAULT_WORKERS)
    p_demo.add_argument("--out", help="Write the JSON report (and its schema) here")
    p_demo.add_argument("--output-md", help="Write the markdown table here")
    p_demo.add_argument("--human", action="store_true")
    p_demo.add_argument("--no-progress", action="store_true", help="Hide the progress bar")
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(debug=args.debug)
    log = logging.getLogger("cli")

    def fail(code: int, err: Exception) -> int:
        emit({"error": type(err).__name__, "message": str(err)})
        return code

    try:
        job = job_from_args(args)
        log.debug(f"dispatching {job.command.value} (seed={job.seed}, budget={job.budget})")
        ring = codec.parse_ring(job.ring) if job.command is not Command.DEMO else None
        return HANDLERS[job.command](args, job, ring)
    except BudgetExceeded as e:
        log.error(f"{e}")
        return fail(EXIT_BUDGET, e)
    except VerificationFailed as e:
        log.error(f"certificate check failed: {e}")
        return fail(EXIT_VERIFICATION, e)
    except PRECONDITION_ERRORS as e:
        log.warning(f"{type(e).__name__}: {e}")
        return fail(EXIT_PRECONDITION, e)
    except (SpecError, RingMismatch, ValueError) as e:
        log.error(f"bad input: {e}")
        return fail(EXIT_USAGE, e)


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
