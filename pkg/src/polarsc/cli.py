"""Command-line surface tying the toolkit together.

Subcommands: encode, decode, timechart, activity, simulate, ber, cost,
igc-trace. Output is JSON or CSV (UTF-8, comma separator, header row, \\n
line endings) to stdout or --out. Exit codes: 0 success, 1 invalid
parameters, 2 internal equivalence failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import archsim, channel, cost, igc, llr, schedule
from .code import make_code_spec, encode as encode_bits
from .errors import EquivalenceError, InvalidParameterError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_EQUIVALENCE = 2

_ARCH_MAP = {
    "conventional": archsim.CONVENTIONAL,
    "lookahead": archsim.LOOKAHEAD,
    "parallel2": archsim.PARALLEL2,
}
_MODE_MAP = {
    "exact": llr.MODE_EXACT,
    "minsum": llr.MODE_MINSUM,
    "minsum-q": llr.MODE_MINSUM_Q,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the contract reserves 2 for
    # equivalence failures, so remap to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InvalidParameterError(message)


def _write_output(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _parse_bits(text):
    try:
        bits = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InvalidParameterError(f"bad bit list: {exc}") from exc
    if any(b not in (0, 1) for b in bits):
        raise InvalidParameterError("bit lists may only contain 0 and 1")
    return bits


def _parse_floats(text):
    try:
        return [float(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InvalidParameterError(f"bad number list: {exc}") from exc


def _load_values(args, parse):
    if getattr(args, "values", None):
        return parse(args.values)
    if getattr(args, "infile", None):
        with open(args.infile, "r", encoding="utf-8") as fh:
            text = fh.read().strip()
        if text.startswith("["):
            return [float(v) for v in json.loads(text)]
        return parse(text)
    raise InvalidParameterError("provide values inline or with --in")


def _spec_from_args(args):
    return make_code_spec(args.n, args.k, design_erasure=args.erasure)


def _cmd_encode(args):
    spec = _spec_from_args(args)
    if args.message:
        message = _parse_bits(args.message)
    else:
        rng = channel.trial_rng(args.seed, 0)
        message = rng.integers(0, 2, size=spec.k_info).tolist()
    codeword = encode_bits(message, spec)
    payload = {
        "spec": spec.to_json_dict(),
        "message": [int(b) for b in message],
        "codeword": [int(b) for b in codeword],
    }
    if args.format == "json":
        _write_output(json.dumps(payload, indent=2), args.out)
    else:
        rows = [(i + 1, int(b)) for i, b in enumerate(codeword)]
        _write_output(_csv_text(("index", "bit"), rows), args.out)


def _cmd_decode(args):
    spec = _spec_from_args(args)
    values = _load_values(args, _parse_floats)
    mode = _MODE_MAP[args.mode]
    if mode == llr.MODE_MINSUM_Q:
        q_llrs = llr.quantize(np.asarray(values), args.q, args.scale)
        trace = llr.sc_decode(q_llrs, spec, mode, q=args.q)
    else:
        trace = llr.sc_decode(np.asarray(values), spec, mode)
    if args.format == "json":
        _write_output(trace.to_json(), args.out)
    else:
        rows = [
            (i + 1, int(u), float(v))
            for i, (u, v) in enumerate(zip(trace.u_hat, trace.decision_llrs))
        ]
        _write_output(_csv_text(("index", "u_hat", "decision_llr"), rows), args.out)


def _cmd_timechart(args):
    if args.arch == "conventional":
        chart = schedule.build_conventional(args.n)
    elif args.arch == "lookahead":
        chart = schedule.build_lookahead(args.n)
    else:
        raise InvalidParameterError("timechart supports conventional and lookahead")
    if args.format == "json":
        _write_output(chart.to_json(), args.out)
    else:
        _write_output(
            _csv_text(("cycle", "stage", "pe_type", "active_pes"), chart.to_rows()),
            args.out,
        )


def _cmd_activity(args):
    table = schedule.parallel_activity_table(args.n, streams=2)
    if args.format == "json":
        _write_output(table.to_json(), args.out)
    else:
        _write_output(
            _csv_text(("stream", "cycle", "active_pes"), table.to_rows()), args.out
        )


def _cmd_simulate(args):
    spec = _spec_from_args(args)
    config = archsim.SimConfig(
        spec=spec, q=args.q, architecture=_ARCH_MAP[args.arch],
        record_trace=args.trace is not None,
    )
    if args.trials > 1:
        report = archsim.verify_equivalence(
            config, trials=args.trials, seed=args.seed,
            ebn0_db=args.ebn0_value, scale=args.scale,
        )
        _write_output(report.to_json(), args.out)
        if not report.passed:
            raise EquivalenceError(
                f"{report.mismatches} of {report.trials} trials diverged"
            )
        return
    cfg = channel.ChannelConfig(
        kind=channel.BPSK_AWGN if args.ebn0 else channel.NOISELESS,
        ebn0_db=args.ebn0_value, master_seed=args.seed,
        code_rate=spec.k_info / spec.n_bits,
    )
    frames = 2 if config.architecture == archsim.PARALLEL2 else 1
    _, float_llrs = channel._draw_trials(spec, cfg, frames)
    q_llrs = llr.quantize(float_llrs, args.q, args.scale)
    blocks = [q_llrs[i] for i in range(frames)]
    result = archsim.run(config, blocks if frames == 2 else blocks[0])
    reference, _ = llr.sc_decode_batch(q_llrs, spec, llr.MODE_MINSUM_Q, q=args.q)
    for s in range(frames):
        if not np.array_equal(result.decisions[s], reference[s]):
            raise EquivalenceError(f"stream {s + 1} diverged from the functional decoder")
    if args.trace is not None:
        text = _csv_text(archsim.TRACE_HEADER, result.trace)
        with open(args.trace, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    _write_output(result.to_json(), args.out)


def _cmd_ber(args):
    spec = _spec_from_args(args)
    modes = [_MODE_MAP[m] for m in args.mode] if args.mode else []
    archs = [_ARCH_MAP[a] for a in args.arch] if args.arch else []
    if not modes and not archs:
        modes = [llr.MODE_MINSUM]
    points = [float(v) for v in args.ebn0.split(",")] if args.ebn0 else [0.0]
    kind = channel.NOISELESS if args.noiseless else channel.BPSK_AWGN
    results = channel.ber_sweep(
        spec, modes, archs, points, trials=args.trials, seed=args.seed,
        channel_kind=kind, q=args.q, scale=args.scale,
    )
    if args.format == "json":
        _write_output(channel.sweep_results_to_json(results), args.out)
    else:
        header = ("mode", "architecture", "q", "ebn0_db", "trials", "bit_errors",
                  "frame_errors", "ber", "fer")
        rows = [
            (r.mode, r.architecture, r.q if r.q is not None else "", r.ebn0_db,
             r.trials, r.bit_errors, r.frame_errors, r.ber, r.fer)
            for r in results
        ]
        _write_output(_csv_text(header, rows), args.out)


def _cmd_cost(args):
    designs = {
        "proposed": [cost.PROPOSED],
        "reference": [cost.LINE_REFERENCE],
        "both": [cost.PROPOSED, cost.LINE_REFERENCE],
    }[args.design]
    reports = [cost.component_counts(d, args.n, args.q) for d in designs]
    if args.format == "json":
        payload = [r.to_json_dict() for r in reports]
        _write_output(json.dumps(payload, indent=2), args.out)
    else:
        rows = []
        for r in reports:
            rows.extend((r.design, line, value) for line, value in r.to_rows())
        _write_output(_csv_text(("design", "line", "value"), rows), args.out)


def _cmd_igc_trace(args):
    if args.bits:
        bits = _parse_bits(args.bits)
    else:
        rng = channel.trial_rng(args.seed, 0)
        bits = rng.integers(0, 2, size=args.n).tolist()
    if len(bits) != args.n:
        raise InvalidParameterError(f"need exactly {args.n} decision bits")
    state = igc.PartialSumState(args.n)
    m = args.n.bit_length() - 1
    rows = []
    for k, bit in enumerate(bits, start=1):
        igc.push_decision(state, int(bit), k)
        level = (k & -k).bit_length() - 1
        stage = m - level
        if stage >= 1:
            sel = igc.selection_bits(state, stage)
            rows.append((k, stage, "".join(str(int(b)) for b in sel)))
    if args.format == "json":
        payload = {
            "network": igc.build_network(args.n).to_json_dict(),
            "updates": [
                {"decision_index": k, "stage": s, "bits": b} for k, s, b in rows
            ],
        }
        _write_output(json.dumps(payload, indent=2), args.out)
    else:
        _write_output(_csv_text(("decision_index", "stage", "bits"), rows), args.out)


def _add_common(p, n_default=8):
    p.add_argument("--n", type=int, default=n_default, help="code length N")
    p.add_argument("--out", type=str, default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _add_code(p):
    p.add_argument("--k", type=int, default=None, help="information bits K (default N/2)")
    p.add_argument("--erasure", type=float, default=0.5,
                   help="design erasure probability for the frozen set")


def _add_quant(p):
    p.add_argument("--q", type=int, default=6, help="quantizer width in bits")
    p.add_argument("--scale", type=float, default=1.0, help="quantizer scale factor")


def build_parser():
    parser = _Parser(prog="polarsc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode a message (random if omitted)")
    _add_common(p)
    _add_code(p)
    p.add_argument("--message", type=str, default=None, help="comma-separated bits")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="functional SC decode of channel LLRs")
    _add_common(p)
    _add_code(p)
    _add_quant(p)
    p.add_argument("--mode", choices=tuple(_MODE_MAP), default="minsum")
    p.add_argument("--llrs", dest="values", type=str, default=None,
                   help="comma-separated channel LLRs")
    p.add_argument("--in", dest="infile", type=str, default=None,
                   help="file with LLRs (JSON array or whitespace separated)")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("timechart", help="emit a decoding time chart")
    _add_common(p)
    p.add_argument("--arch", choices=("conventional", "lookahead"), default="lookahead")
    p.set_defaults(func=_cmd_timechart)

    p = sub.add_parser("activity", help="two-stream PE activity table")
    _add_common(p)
    p.set_defaults(func=_cmd_activity)

    p = sub.add_parser("simulate", help="cycle-accurate run with equivalence check")
    _add_common(p)
    _add_code(p)
    _add_quant(p)
    p.add_argument("--arch", choices=tuple(_ARCH_MAP), default="lookahead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1,
                   help="> 1 runs a randomized equivalence campaign")
    p.add_argument("--ebn0", type=str, default=None,
                   help="Eb/N0 in dB (default noiseless for single runs)")
    p.add_argument("--trace", type=str, default=None, help="write a trace CSV here")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("ber", help="Monte-Carlo BER/FER sweep")
    _add_common(p, n_default=128)
    _add_code(p)
    _add_quant(p)
    p.add_argument("--mode", action="append", choices=tuple(_MODE_MAP), default=None)
    p.add_argument("--arch", action="append", choices=tuple(_ARCH_MAP), default=None)
    p.add_argument("--ebn0", type=str, default="0,1,2,3", help="comma list of dB points")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noiseless", action="store_true")
    p.set_defaults(func=_cmd_ber)

    p = sub.add_parser("cost", help="hardware consumption comparison tables")
    _add_common(p, n_default=1024)
    p.add_argument("--q", type=int, default=6)
    p.add_argument("--design", choices=("proposed", "reference", "both"), default="both")
    p.set_defaults(func=_cmd_cost)

    p = sub.add_parser("igc-trace", help="partial-sum network update trace")
    _add_common(p)
    p.add_argument("--bits", type=str, default=None, help="decision bits to push")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_igc_trace)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if hasattr(args, "k") and args.k is None:
            args.k = args.n // 2
        if hasattr(args, "ebn0") and args.command == "simulate":
            args.ebn0_value = float(args.ebn0) if args.ebn0 else 0.0
        args.func(args)
    except InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except EquivalenceError as exc:
        print(f"equivalence failure: {exc}", file=sys.stderr)
        return EXIT_EQUIVALENCE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
