"""Command line workbench.

Subcommands:

  models             enumerate SE-models, answer sets, classical models
  update             update one program by another and realize the result
  equiv              decide strong equivalence or strong entailment
  query              decide whether an update entails a query program
  check              run a property suite (assignment, postulates, ...)
  demo-impossibility run the fixed support/fact-update dichotomy instance
  bench              time query() on random instances, write CSV and PNG

Exit codes: 0 success or property holds, 1 a checked property fails or a
decision comes out negative, 2 parse or input error, 3 alphabet mismatch,
4 assignment not well-defined on the inputs, 5 alphabet too large for an
exhaustive check.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .orders import (AlphabetTooLargeError, TableAssignment, faithfulize,
                     find_faithfulness_violation, find_organised_violation,
                     find_semi_faithfulness_violation,
                     find_well_definedness_violation)
from .realization import realize
from .semantics import (answer_sets, classical_models, se_models,
                        se_set_to_json, sort_se, strongly_entails,
                        strongly_equivalent)
from .syntax import Alphabet, AlphabetError, ParseError, parse_program, \
    render_program
from .update import (UpdateOperator, WellDefinednessError, benchmark_query,
                     check_classical_postulates, check_postulates,
                     definite_query, impossibility_demo, query,
                     update_models)

OK, FAILS, BAD_INPUT, BAD_ALPHABET, NOT_WELL_DEFINED, TOO_LARGE = range(6)


def _parse_alphabet_arg(text: str) -> Alphabet:
    names = text.replace(",", " ").split()
    if not names:
        raise ValueError("empty alphabet argument")
    return Alphabet(names)


def _default_alphabet(size: int) -> Alphabet:
    names = "pqrstuvwxyz"
    if size > len(names):
        raise ValueError("built-in alphabet names support up to %d atoms"
                         % len(names))
    return Alphabet(names[:size])


def _load_programs(paths, alphabet_arg):
    """Parse the files against one shared alphabet.

    Without an explicit alphabet, the union of atoms across the files is
    used, so SE-models of the programs are directly comparable.
    """
    texts = [Path(p).read_text() for p in paths]
    if alphabet_arg:
        alphabet = _parse_alphabet_arg(alphabet_arg)
    else:
        atoms: set[str] = set()
        for t in texts:
            atoms.update(parse_program(t).alphabet)
        alphabet = Alphabet(atoms)
    return [parse_program(t, alphabet) for t in texts], alphabet


def _make_operator(args) -> UpdateOperator:
    path = getattr(args, "assignment_file", None)
    if path:
        table = TableAssignment.from_text(Path(path).read_text())
        return UpdateOperator(assignment=table,
                              name="table:%s" % Path(path).name)
    return UpdateOperator.winslett()


def _emit(args, text: str, payload) -> None:
    out = (json.dumps(payload, indent=2, sort_keys=True)
           if args.format == "json" else text)
    target = getattr(args, "out", None)
    if target:
        Path(target).write_text(out + "\n")
    else:
        print(out)


def _world_text(w) -> str:
    return "{%s}" % ",".join(sorted(w))


def _program_block(prog) -> list[str]:
    text = render_program(prog)
    return ["  " + line for line in text.split("\n")] if text \
        else ["  (empty program)"]


def _model_summary(prog, alphabet):
    se = sort_se(se_models(prog), alphabet)
    ans = sorted(answer_sets(prog), key=lambda s: tuple(sorted(s)))
    classical = sorted(classical_models(prog, alphabet),
                       key=lambda s: tuple(sorted(s)))
    lines = ["alphabet: %s" % " ".join(alphabet),
             "se-models (%d): %s" % (len(se),
                                     " ".join(str(x) for x in se) or "(none)"),
             "answer-sets (%d): %s" % (len(ans),
                                       " ".join(_world_text(j) for j in ans)
                                       or "(none)"),
             "classical-models (%d): %s"
             % (len(classical),
                " ".join(_world_text(j) for j in classical) or "(none)")]
    payload = {"alphabet": list(alphabet),
               "se_models": se_set_to_json(se, alphabet),
               "answer_sets": [sorted(j) for j in ans],
               "classical_models": [sorted(j) for j in classical]}
    return lines, payload


def _cmd_models(args) -> int:
    (prog,), alphabet = _load_programs([args.program], args.alphabet)
    lines, payload = _model_summary(prog, alphabet)
    _emit(args, "\n".join(lines), payload)
    return OK


def _cmd_update(args) -> int:
    (p, u), alphabet = _load_programs([args.program, args.update],
                                      args.alphabet)
    op = _make_operator(args)
    result_models = update_models(p, u, op.assignment)
    result = realize(result_models, alphabet)
    lines = ["alphabet: %s" % " ".join(alphabet), "result program:"]
    lines += _program_block(result)
    body, payload = _model_summary(result, alphabet)
    lines += body[1:]
    payload["program"] = render_program(result)
    _emit(args, "\n".join(lines), payload)
    return OK


def _cmd_equiv(args) -> int:
    (p, q), alphabet = _load_programs([args.left, args.right], args.alphabet)
    if args.entails:
        verdict = strongly_entails(p, q)
        label = "strongly entails"
    else:
        verdict = strongly_equivalent(p, q)
        label = "strongly equivalent"
    text = "alphabet: %s\n%s: %s" % (" ".join(alphabet), label,
                                     "yes" if verdict else "no")
    _emit(args, text, {"alphabet": list(alphabet), "relation": label,
                       "holds": verdict})
    return OK if verdict else FAILS


def _cmd_query(args) -> int:
    (p, u, q), alphabet = _load_programs(
        [args.program, args.update, args.query], args.alphabet)
    op = _make_operator(args)
    if args.definite:
        verdict = definite_query(p, u, q, op.assignment)
        mode = "definite"
    else:
        verdict = query(p, u, q, op.assignment)
        mode = "general"
    text = "alphabet: %s\nentailed (%s): %s" % (
        " ".join(alphabet), mode, "yes" if verdict else "no")
    _emit(args, text, {"alphabet": list(alphabet), "mode": mode,
                       "entailed": verdict})
    return OK if verdict else FAILS


def _check_assignment(args, alphabet) -> int:
    op = _make_operator(args)
    o = op.assignment
    if isinstance(o, TableAssignment):
        if args.alphabet or args.alphabet_size:
            if o.alphabet != alphabet:
                raise AlphabetError("assignment table is over %r, not %r"
                                    % (o.alphabet, alphabet))
        alphabet = o.alphabet
    sampled = args.mode == "sampled"
    kw = {}
    if sampled:
        kw = {"exhaustive_limit": -1, "seed": args.seed,
              "samples": args.samples}
    checks = [
        ("faithful", find_faithfulness_violation(o, alphabet)),
        ("semi-faithful", find_semi_faithfulness_violation(o, alphabet)),
        ("organised", find_organised_violation(o, alphabet, **kw)),
        ("well-defined", find_well_definedness_violation(o, alphabet, **kw)),
    ]
    lines = ["assignment: %s" % op.name,
             "alphabet: %s" % " ".join(alphabet),
             "mode: %s" % ("sampled (seed=%d, n=%d)"
                           % (args.seed, args.samples) if sampled
                           else "exhaustive")]
    payload = {"assignment": op.name, "alphabet": list(alphabet),
               "mode": args.mode, "properties": {}}
    ok = True
    for name, violation in checks:
        holds = violation is None
        ok = ok and holds
        lines.append("%s: %s" % (name, "yes" if holds else "NO"))
        entry = {"holds": holds}
        if violation is not None:
            parts = []
            for item in violation:
                if isinstance(item, frozenset):
                    parts.append("{%s}" % ", ".join(
                        str(x) for x in sort_se(item, alphabet)))
                else:
                    parts.append(str(item))
            lines.append("  violation: %s" % "; ".join(parts))
            entry["violation"] = parts
        payload["properties"][name] = entry
    _emit(args, "\n".join(lines), payload)
    return OK if ok else FAILS


def _check_postulates(args, alphabet) -> int:
    op = _make_operator(args)
    report = check_postulates(op, alphabet,
                              exhaustive=args.mode == "exhaustive",
                              seed=args.seed, samples=args.samples,
                              p4_samples=args.samples)
    head = "operator: %s\nalphabet: %s\n" % (op.name, " ".join(alphabet))
    payload = report.to_json()
    payload["operator"] = op.name
    payload["alphabet"] = list(alphabet)
    _emit(args, head + report.render_text(), payload)
    return OK if report.all_hold else FAILS


def _check_classical(args, alphabet) -> int:
    report = check_classical_postulates(alphabet)
    head = "alphabet: %s\n" % " ".join(alphabet)
    payload = report.to_json()
    payload["alphabet"] = list(alphabet)
    _emit(args, head + report.render_text(), payload)
    return OK if report.all_hold else FAILS


def _check_support_factupdate(args) -> int:
    op = _make_operator(args)
    report = impossibility_demo(op)
    _emit(args, report.render_text(), report.to_json())
    return OK


def _cmd_check(args) -> int:
    if args.alphabet:
        alphabet = _parse_alphabet_arg(args.alphabet)
    else:
        alphabet = _default_alphabet(args.alphabet_size or 2)
    if args.what == "assignment":
        return _check_assignment(args, alphabet)
    if args.what == "postulates":
        return _check_postulates(args, alphabet)
    if args.what == "classical-postulates":
        return _check_classical(args, alphabet)
    return _check_support_factupdate(args)


def _cmd_demo(args) -> int:
    op = _make_operator(args)
    report = impossibility_demo(op)
    _emit(args, report.render_text(), report.to_json())
    return OK


def _cmd_faithfulize(args) -> int:
    op = _make_operator(args)
    o = op.assignment
    alphabet = o.alphabet if isinstance(o, TableAssignment) else (
        _parse_alphabet_arg(args.alphabet) if args.alphabet
        else _default_alphabet(args.alphabet_size or 1))
    table = faithfulize(o, alphabet)
    text = table.to_text()
    target = getattr(args, "out", None)
    if target:
        Path(target).write_text(text + "\n")
    else:
        print(text)
    return OK


def _cmd_bench(args) -> int:
    sizes = sorted({int(s) for s in args.sizes.replace(",", " ").split()})
    rows = benchmark_query(sizes=sizes, samples=args.samples, seed=args.seed)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "bench.csv"
    png_path = out_dir / "bench.png"
    with csv_path.open("w", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["alphabet_size", "sample", "seconds", "entailed"])
        writer.writeheader()
        writer.writerows(rows)

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    means = []
    for size in sizes:
        times = [r["seconds"] for r in rows if r["alphabet_size"] == size]
        means.append(sum(times) / len(times))
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.scatter([r["alphabet_size"] for r in rows],
               [r["seconds"] for r in rows], s=12, alpha=0.5,
               label="individual runs")
    ax.plot(sizes, means, marker="o", color="tab:red", label="mean")
    ax.set_xlabel("alphabet size")
    ax.set_ylabel("seconds per query")
    ax.set_yscale("log")
    ax.set_xticks(sizes)
    ax.legend(loc="upper left", frameon=False)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)

    lines = ["wrote %s" % csv_path, "wrote %s" % png_path]
    for size, mean in zip(sizes, means):
        lines.append("size %d: mean %.6fs over %d runs"
                     % (size, mean, args.samples))
    print("\n".join(lines))
    return OK


def _add_common(sub, *, operator: bool = False, alphabet: bool = True):
    if alphabet:
        sub.add_argument("--alphabet",
                         help="shared alphabet, e.g. 'p,q,r' "
                         "(default: atoms appearing in the input files)")
    if operator:
        sub.add_argument("--operator", choices=["winslett"],
                         default="winslett",
                         help="built-in preorder assignment")
        sub.add_argument("--assignment-file",
                         help="explicit preorder tables (overrides "
                         "--operator)")
    sub.add_argument("--format", choices=["text", "json"], default="text")
    sub.add_argument("--out", help="write the report to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seupdate",
        description="Workbench for SE-model based program updates.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("models", help="enumerate models of a program")
    sub.add_argument("program")
    _add_common(sub)
    sub.set_defaults(fn=_cmd_models)

    sub = subs.add_parser("update", help="update a program, print result")
    sub.add_argument("program")
    sub.add_argument("update")
    _add_common(sub, operator=True)
    sub.set_defaults(fn=_cmd_update)

    sub = subs.add_parser("equiv", help="strong equivalence / entailment")
    sub.add_argument("left")
    sub.add_argument("right")
    sub.add_argument("--entails", action="store_true",
                     help="check entailment left-to-right instead")
    _add_common(sub)
    sub.set_defaults(fn=_cmd_equiv)

    sub = subs.add_parser("query", help="does the update entail a query")
    sub.add_argument("program")
    sub.add_argument("update")
    sub.add_argument("query")
    sub.add_argument("--definite", action="store_true",
                     help="require definite inputs, use the short check")
    _add_common(sub, operator=True)
    sub.set_defaults(fn=_cmd_query)

    sub = subs.add_parser("check", help="run a property suite")
    sub.add_argument("--what",
                     choices=["assignment", "postulates",
                              "classical-postulates", "support-factupdate"],
                     default="postulates")
    sub.add_argument("--alphabet-size", type=int,
                     help="use the first N built-in atom names")
    sub.add_argument("--mode", choices=["exhaustive", "sampled"],
                     default="exhaustive")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--samples", type=int, default=300)
    _add_common(sub, operator=True)
    sub.set_defaults(fn=_cmd_check)

    sub = subs.add_parser("demo-impossibility",
                          help="support vs fact-update dichotomy instance")
    _add_common(sub, operator=True, alphabet=False)
    sub.set_defaults(fn=_cmd_demo)

    sub = subs.add_parser("faithfulize",
                          help="print the faithful repair of an assignment")
    sub.add_argument("--alphabet-size", type=int)
    _add_common(sub, operator=True)
    sub.set_defaults(fn=_cmd_faithfulize)

    sub = subs.add_parser("bench",
                          help="time query() on random instances")
    sub.add_argument("--sizes", default="1,2,3")
    sub.add_argument("--samples", type=int, default=3)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out-dir", default="bench-out")
    sub.set_defaults(fn=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return BAD_INPUT
    except AlphabetTooLargeError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return TOO_LARGE
    except AlphabetError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return BAD_ALPHABET
    except WellDefinednessError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return NOT_WELL_DEFINED
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
