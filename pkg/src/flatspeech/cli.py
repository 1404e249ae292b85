"""Command-line interface: corpus generation, training, tagging, decoding,
evaluation, lexicon ablation and the baseline comparison."""

from __future__ import annotations

import argparse
import csv
import sys

from .analysis import AnalyzerConfig, analyze_words
from .corpus import Corpus, GeneratorConfig, generate_corpus, split_corpus
from .decoder import DecoderConfig, load_lattice, decode, results_to_dicts, results_to_json
from .evaluation import (
    ablation_experiment,
    combiner_accuracies,
    overall_phrase_accuracy,
    tagger_accuracies,
)
from .experiments import (
    DelayTaskConfig,
    NoisyLatticeConfig,
    delay_comparison,
    make_delay_task,
    noisy_lattice_experiment,
)
from .models import ModelSet
from .tagsets import TagsetBundle
from .training import TrainSetup, train_all


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def cmd_gen_corpus(args) -> int:
    cfg = GeneratorConfig(
        n_turns=args.turns,
        seed=args.seed,
        p_pause=args.p_pause,
        p_interjection=args.p_interjection,
        p_repetition=args.p_repetition,
        p_substitution=args.p_substitution,
        p_phrase_restart=args.p_phrase_restart,
    )
    corpus = generate_corpus(cfg)
    corpus.save(args.out)
    print(f"wrote {len(corpus)} turns, {corpus.n_tokens} tokens to {args.out}")
    return 0


def cmd_train(args) -> int:
    corpus = Corpus.load(args.corpus)
    setup = TrainSetup(
        train_fraction=args.train_fraction,
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        hidden=args.hidden,
        seed=args.seed,
    )
    models, errors = train_all(corpus, TagsetBundle.default(), setup)
    models.save(args.out)
    for name in sorted(errors):
        print(f"{name}: final mse {errors[name]:.6f}")
    print(f"wrote model set to {args.out}")
    return 0


def cmd_tag(args) -> int:
    models = ModelSet.load(args.models)
    analyzer = analyze_words(models, args.words, AnalyzerConfig())
    print("idx word syn abs_syn sem abs_sem boundary deleted repair")
    for i, tok in enumerate(analyzer.tokens):
        print(
            f"{i} {tok.word} {tok.syn_basic.top_label()} {tok.syn_abstract.top_label()} "
            f"{tok.sem_basic.top_label()} {tok.sem_abstract.top_label()} "
            f"{_fmt(tok.boundary)} {int(tok.deleted)} {tok.repair_kind or '-'}"
        )
    for p in analyzer.phrases():
        words = " ".join(
            t.word for t in analyzer.tokens[p.start : p.end + 1] if not t.deleted
        )
        print(f"phrase {p.start}-{p.end} {p.syn_label}/{p.sem_label}: {words}")
    return 0


def cmd_decode(args) -> int:
    models = ModelSet.load(args.models)
    graph = load_lattice(args.lattice, max_gap=args.max_gap)
    config = DecoderConfig(beam=args.beam)
    results = decode(models, graph, config)
    if args.json:
        print(results_to_json(results, graph, args.top))
    else:
        for row in results_to_dicts(results, graph, args.top):
            print(f"{row['rank']} {_fmt(row['score'])} {row['words']}")
    return 0


def cmd_eval(args) -> int:
    models = ModelSet.load(args.models)
    corpus = Corpus.load(args.corpus)
    _, test = split_corpus(corpus, args.train_fraction)
    rows = []
    for name, acc in sorted(tagger_accuracies(models, test.turns).items()):
        rows.append([name, _fmt(acc)])
    for name, acc in sorted(combiner_accuracies(models, test.turns).items()):
        rows.append([name, _fmt(acc)])
    overall = overall_phrase_accuracy(models, test.turns)
    rows.append(["overall-syn", _fmt(overall.syn_accuracy)])
    rows.append(["overall-sem", _fmt(overall.sem_accuracy)])
    _write_csv(args.out, ["measure", "accuracy"], rows)
    for measure, acc in rows:
        print(f"{measure}: {acc}")
    print(f"wrote {args.out}")
    return 0


def cmd_ablate(args) -> int:
    models = ModelSet.load(args.models)
    corpus = Corpus.load(args.corpus)
    _, test = split_corpus(corpus, args.train_fraction)
    fractions = tuple(float(f) for f in args.fractions.split(","))
    seeds = tuple(int(s) for s in args.seeds.split(","))
    results = ablation_experiment(models, test.turns, fractions, seeds=seeds)
    rows = [
        [_fmt(fraction), _fmt(res.syn_accuracy), _fmt(res.sem_accuracy)]
        for fraction, res in sorted(results.items())
    ]
    _write_csv(args.out, ["ablated_fraction", "syn_accuracy", "sem_accuracy"], rows)
    for row in rows:
        print(" ".join(row))
    print(f"wrote {args.out}")
    return 0


def cmd_ngram_compare(args) -> int:
    task = make_delay_task(DelayTaskConfig(seed=args.seed))
    curves = delay_comparison(task)
    levels = list(range(len(task.alphabet)))
    names = sorted(curves)
    rows = [[str(k)] + [_fmt(curves[name][k]) for name in names] for k in levels]
    _write_csv(args.out, ["exclusion_level"] + names, rows)
    print(f"wrote {args.out}")
    return 0


def cmd_lattice_study(args) -> int:
    models = ModelSet.load(args.models)
    corpus = Corpus.load(args.corpus)
    _, test = split_corpus(corpus, args.train_fraction)
    cfg = NoisyLatticeConfig(n_lattices=args.lattices, seed=args.seed)
    results = noisy_lattice_experiment(models, test.turns, cfg)
    rows = [[mode, _fmt(acc)] for mode, acc in sorted(results.items())]
    _write_csv(args.out, ["knowledge_sources", "word_accuracy"], rows)
    for mode, acc in rows:
        print(f"{mode}: {acc}")
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flatspeech",
        description="Flat multi-level analysis of spoken-language word streams",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-corpus", help="generate an annotated synthetic corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--turns", type=int, default=GeneratorConfig.n_turns)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p-pause", type=float, default=GeneratorConfig.p_pause)
    p.add_argument("--p-interjection", type=float, default=GeneratorConfig.p_interjection)
    p.add_argument("--p-repetition", type=float, default=GeneratorConfig.p_repetition)
    p.add_argument("--p-substitution", type=float, default=GeneratorConfig.p_substitution)
    p.add_argument("--p-phrase-restart", type=float, default=GeneratorConfig.p_phrase_restart)
    p.set_defaults(func=cmd_gen_corpus)

    p = sub.add_parser("train", help="train all networks from a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--train-fraction", type=float, default=TrainSetup.train_fraction)
    p.add_argument("--epochs", type=int, default=TrainSetup.epochs)
    p.add_argument("--learning-rate", type=float, default=TrainSetup.learning_rate)
    p.add_argument("--hidden", type=int, default=TrainSetup.hidden)
    p.add_argument("--seed", type=int, default=TrainSetup.seed)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("tag", help="analyze a word sequence")
    p.add_argument("--models", required=True)
    p.add_argument("words", nargs="+")
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("decode", help="decode a word lattice file")
    p.add_argument("--models", required=True)
    p.add_argument("--lattice", required=True)
    p.add_argument("--beam", type=int, default=10)
    p.add_argument("--max-gap", type=int, default=1)
    p.add_argument("--top", type=int, default=5)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("eval", help="accuracy report on the held-out turns")
    p.add_argument("--models", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--train-fraction", type=float, default=TrainSetup.train_fraction)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("ablate", help="overall accuracy under lexicon ablation")
    p.add_argument("--models", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--train-fraction", type=float, default=TrainSetup.train_fraction)
    p.add_argument("--fractions", default="0.05,0.10")
    p.add_argument("--seeds", default="0,1,2,3,4")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("ngram-compare", help="recurrent vs n-gram exclusion curves")
    p.add_argument("--seed", type=int, default=DelayTaskConfig.seed)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ngram_compare)

    p = sub.add_parser("lattice-study", help="word accuracy by knowledge sources")
    p.add_argument("--models", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--train-fraction", type=float, default=TrainSetup.train_fraction)
    p.add_argument("--lattices", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_lattice_study)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
