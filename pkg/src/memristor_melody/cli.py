"""Command-line front end: seed, generate, evolve, analyze.

Exit codes: 0 success, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import analyzer, composer, graph, seeder
from .memristor import DEFAULT_CURVE, ConductanceCurve

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

PITCH_STATES = "pitch-states.csv"
TEMPO_STATES = "tempo-states.csv"
PITCH_WEIGHTS = "pitch-weights.csv"
TEMPO_WEIGHTS = "tempo-weights.csv"


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _curve(text):
    try:
        return ConductanceCurve.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _snapshots(text):
    try:
        points = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid snapshot list {text!r}") from None
    if any(p < 0 for p in points) or points != sorted(set(points)):
        raise argparse.ArgumentTypeError("snapshots must be non-negative and strictly ascending")
    return points


def _u64(text):
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _non_negative(text):
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def write_graphs(out: Path, pitch, tempo):
    out.mkdir(parents=True, exist_ok=True)
    graph.save_states(pitch, out / PITCH_STATES)
    graph.save_states(tempo, out / TEMPO_STATES)
    graph.save_weights(pitch, out / PITCH_WEIGHTS)
    graph.save_weights(tempo, out / TEMPO_WEIGHTS)


def read_graphs(matrices: Path, curve):
    pitch = _load(matrices / PITCH_STATES, curve)
    tempo = _load(matrices / TEMPO_STATES, curve)
    if pitch.alphabet != graph.PITCHES or tempo.alphabet != graph.DURATIONS:
        raise DataError(f"{matrices}: expected a 24x24 pitch and a 9x9 tempo state matrix")
    return pitch, tempo


def _load(path: Path, curve):
    try:
        return graph.load_states(path, curve)
    except FileNotFoundError:
        raise DataError(f"{path}: no such file") from None
    except (graph.MatrixFormatError, OSError, UnicodeDecodeError) as exc:
        raise DataError(str(exc)) from None


def _config(args, **overrides) -> composer.GeneratorConfig:
    seed = args.seed
    if args.entropy:
        seed = int(np.random.SeedSequence().entropy) % 2**64
        print(f"seed: {seed}", file=sys.stderr)
    return composer.GeneratorConfig(rng_seed=seed, **overrides)


def cmd_seed(args) -> int:
    try:
        corpus = seeder.load_manifest(args.corpus, default_transpose=args.transpose)
        pitch, tempo = seeder.seed_graphs(corpus, curve=args.curve)
    except (OSError, KeyError, TypeError) as exc:
        raise DataError(f"{args.corpus}: {exc}") from None
    except ValueError as exc:
        raise DataError(str(exc)) from None
    write_graphs(args.out, pitch, tempo)
    n_melodies = len(corpus.melodies)
    print(f"seeded from {n_melodies} melodies -> {args.out}")
    return EXIT_OK


def cmd_generate(args) -> int:
    pitch, tempo = read_graphs(args.matrices, args.curve)
    cfg = _config(args, note_count=args.notes, feedback=not args.no_feedback)
    piece = composer.generate(pitch, tempo, cfg)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "piece.mel").write_text(piece.to_text(f"generated, seed {cfg.rng_seed}"), encoding="utf-8")
    (args.out / "trace.csv").write_text(piece.trace_csv(), encoding="utf-8")
    if cfg.feedback:
        write_graphs(args.out, piece.pitch_graph, piece.tempo_graph)
    print(f"{len(piece.events)} notes -> {args.out / 'piece.mel'}")
    return EXIT_OK


def cmd_evolve(args) -> int:
    pitch, tempo = read_graphs(args.matrices, args.curve)
    total = args.notes if args.notes is not None else max(args.snapshots, default=0)
    if args.snapshots and args.snapshots[-1] > total:
        raise UsageError(f"snapshot {args.snapshots[-1]} is beyond --notes {total}")
    cfg = _config(args, note_count=args.excerpt)
    result = composer.evolve(pitch, tempo, cfg, total_notes=total, snapshot_at=args.snapshots,
                             excerpt_notes=args.excerpt)
    for snap in result.snapshots:
        out = args.out / f"notes-{snap.notes}"
        p = graph.TransitionGraph(graph.PITCHES, args.curve).set_states(snap.pitch_states)
        t = graph.TransitionGraph(graph.DURATIONS, args.curve).set_states(snap.tempo_states)
        write_graphs(out, p, t)
        (out / "excerpt.mel").write_text(snap.excerpt.to_text(f"after {snap.notes} notes"), encoding="utf-8")
        print(f"notes={snap.notes:<8d} drift={analyzer.drift_l1(p, pitch):.9g} -> {out}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    reference = _load(args.reference, args.curve) if args.reference else None
    for path in args.matrices:
        g = _load(path, args.curve)
        ref = None
        if reference is not None:
            if reference.size != g.size:
                raise DataError(f"{args.reference}: reference does not match {path}")
            ref = reference
        report = analyzer.style_report(g, reference=ref, threshold=args.threshold)
        print(f"== {path}")
        print(report.table())
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"{path.stem}.report.json").write_text(report.to_json() + "\n", encoding="utf-8")
        else:
            print(report.to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="memristor-melody", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--curve", type=_curve, default=DEFAULT_CURVE, metavar="GMIN,GMAX,KAPPA",
                       help="conductance curve (default 0.1,1.0,4.0)")

    def rng_flags(p):
        p.add_argument("--seed", type=_u64, default=composer.DEFAULT_SEED,
                       help=f"random seed (default {composer.DEFAULT_SEED})")
        p.add_argument("--entropy", action="store_true", help="seed from OS entropy (printed to stderr)")

    p = sub.add_parser("seed", help="count transitions in a corpus and write state matrices")
    p.add_argument("--corpus", type=Path, required=True,
                   help="JSON or flat manifest, directory of .mel files, or one .mel file")
    p.add_argument("--transpose", type=int, default=0, help="semitones for entries without their own")
    p.add_argument("--out", type=Path, default=Path("matrices"))
    common(p)
    p.set_defaults(func=cmd_seed)

    p = sub.add_parser("generate", help="generate a piece from state matrices")
    p.add_argument("matrices", type=Path, help="directory holding pitch-states.csv and tempo-states.csv")
    p.add_argument("--notes", type=_positive_int, default=100)
    p.add_argument("--no-feedback", action="store_true", help="leave the matrices unchanged")
    p.add_argument("--out", type=Path, default=Path("piece"))
    common(p)
    rng_flags(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("evolve", help="long feedback run with matrix snapshots and excerpts")
    p.add_argument("matrices", type=Path)
    p.add_argument("--snapshots", type=_snapshots, default=[1000, 10000, 100000], metavar="N,N,...")
    p.add_argument("--notes", type=int, default=None, help="total notes (default: last snapshot)")
    p.add_argument("--excerpt", type=_positive_int, default=100, help="notes per snapshot excerpt")
    p.add_argument("--out", type=Path, default=Path("evolution"))
    common(p)
    rng_flags(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("analyze", help="symmetry, reducibility and usage of state matrices")
    p.add_argument("matrices", type=Path, nargs="+", help="state CSV files")
    p.add_argument("--reference", type=Path, help="state CSV to measure drift against")
    p.add_argument("--threshold", type=_non_negative, default=None, help="usage threshold (default g_min)")
    p.add_argument("--out", type=Path, default=None, help="write <name>.report.json files here")
    common(p)
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"memristor-melody: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"memristor-melody: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
