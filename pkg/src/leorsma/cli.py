"""
Command-line front end.

    leorsma correlation [--config FILE] [--set KEY=VALUE ...] [--output CSV]
    leorsma rates [--config FILE] [--set KEY=VALUE ...] [--output CSV] [--workers N]
    leorsma rates --from-manifest RUN.manifest.json --output CSV
    leorsma point [--config FILE] --distance "50 km" --scheme RSMA --alpha 0

Exit codes: 0 success, 1 configuration error, 2 runtime/numerical error,
3 I/O error.
"""

import argparse
import io
import os
import sys

import numpy as np

from . import __version__
from .channel import apply_aod_error, channel_matrix, correlation
from .config import (ConfigError, dump_manifest, load_manifest, make_manifest,
                     parse_config, parse_quantity, write_correlation_csv,
                     write_rates_csv)
from .experiment import iteration_epsilons, run_sweep
from .precoding import Scheme, build_precoders
from .rates import achievable_rate

__all__ = ['cmd_correlation', 'cmd_rates', 'cmd_point', 'main']

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME, EXIT_IO = 0, 1, 2, 3


def cmd_correlation(scenario, sweep):
    """CSV text with the correlation factor at every grid distance."""
    rhos = []
    for d in sweep.distance_grid:
        H = channel_matrix(scenario.with_user_distance(d))
        rhos.append(float(correlation(H[0], H[1])))
    buf = io.StringIO()
    write_correlation_csv(sweep.distance_grid, rhos, buf)
    return buf.getvalue()


def cmd_rates(scenario, sweep, workers=1):
    """CSV text with the mean achievable rate of every requested curve."""
    result = run_sweep(sweep, scenario, workers=workers)
    buf = io.StringIO()
    write_rates_csv(result, buf)
    return buf.getvalue()


def cmd_point(scenario, sweep, distance, scheme, alpha=1.0):
    """Human-readable breakdown of one operating point.

    Under imperfect CSIT the per-user rates are Monte Carlo means over
    ``sweep.iterations_at(distance)`` error draws.
    """
    scheme = Scheme(scheme)
    sd = scenario.with_user_distance(distance)
    H = channel_matrix(sd)
    n = sweep.iterations_at(distance)
    eps = iteration_epsilons(sd.user_count, sweep.delta_eps, n, sweep.seed,
                             distance)
    H_est = apply_aod_error(np.broadcast_to(H, eps.shape + (sd.antenna_count,)),
                            sd, eps)
    pre = build_precoders(scheme, H_est, sd, alpha)
    rates = achievable_rate(H, pre, sd.noise_power)

    lines = [
        "scheme            {0}".format(scheme.value),
        "distance          {0:.3f} km".format(distance / 1e3),
        "correlation rho   {0:.6f}".format(float(correlation(H[0], H[1]))),
        "delta_eps         {0:g} ({1} iteration{2})".format(
            sweep.delta_eps, n, '' if n == 1 else 's'),
        "transmit power    {0:.6g} W".format(sd.transmit_power),
    ]
    if scheme is Scheme.RSMA:
        lines.append("alpha             {0:g}".format(pre.alpha))
    lines.append("common power      {0:.6g} W".format(
        float(np.mean(pre.common_power))))
    lines.append("private power     {0:.6g} W".format(
        float(np.mean(pre.private_power))))
    col = np.mean(pre.column_powers(), axis=0)
    for k in range(sd.user_count):
        lines.append("user {0}: power {1:.6g} W  R_c {2:.6f}  R_p {3:.6f} "
                     "bps/Hz".format(k + 1, col[k],
                                     float(np.mean(rates.common_rates[..., k])),
                                     float(np.mean(rates.private_rates[..., k]))))
    if scheme is Scheme.RSMA:
        lines.append("min common rate   {0:.6f} bps/Hz".format(
            float(np.mean(rates.common_rates.min(axis=-1)))))
    lines.append("total             {0:.6f} bps/Hz".format(
        float(np.mean(rates.sum_rate))))
    return '\n'.join(lines) + '\n'


def _write(text, output):
    if output in (None, '-'):
        sys.stdout.write(text)
    else:
        with open(output, 'w', encoding='utf-8', newline='') as fh:
            fh.write(text)


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='FILE',
                        help="flat 'key = value' configuration file")
    common.add_argument('--set', dest='overrides', action='append', default=[],
                        metavar='KEY=VALUE', help="override one config key")

    parser = argparse.ArgumentParser(
        prog='leorsma',
        description="RSMA / SDMA / OMA achievable rates for a LEO downlink")
    parser.add_argument('--version', action='version', version=__version__)
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('correlation', parents=[common],
                       help="correlation factor versus user distance")
    p.add_argument('--output', '-o', default='-')

    p = sub.add_parser('rates', parents=[common],
                       help="achievable rates versus user distance")
    p.add_argument('--output', '-o', default='-')
    p.add_argument('--workers', type=int, default=1)
    p.add_argument('--from-manifest', metavar='JSON',
                   help="rerun exactly the configuration of a previous run")

    p = sub.add_parser('point', parents=[common],
                       help="rate breakdown at a single distance")
    p.add_argument('--distance', required=True,
                   help="ground distance of user 2, e.g. '50 km'")
    p.add_argument('--scheme', required=True, choices=[s.value for s in Scheme])
    p.add_argument('--alpha', type=float, default=1.0)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, 'from_manifest', None):
            scenario, sweep = load_manifest(args.from_manifest)
        else:
            scenario, sweep = parse_config(args.config, args.overrides)
        if args.command == 'point':
            distance = parse_quantity(args.distance, 'length', 'distance')
    except ConfigError as exc:
        print("config error: {0}".format(exc), file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print("I/O error: {0}: {1}".format(exc.filename, exc.strerror),
              file=sys.stderr)
        return EXIT_IO

    try:
        if args.command == 'correlation':
            text = cmd_correlation(scenario, sweep)
        elif args.command == 'rates':
            text = cmd_rates(scenario, sweep, workers=args.workers)
        else:
            text = cmd_point(scenario, sweep, distance, args.scheme, args.alpha)
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print("runtime error: {0}".format(exc), file=sys.stderr)
        return EXIT_RUNTIME

    output = getattr(args, 'output', '-')
    try:
        _write(text, output)
        if args.command != 'point' and output not in (None, '-'):
            manifest = make_manifest(scenario, sweep, args.command,
                                     os.path.abspath(output), __version__)
            _write(dump_manifest(manifest), output + '.manifest.json')
    except OSError as exc:
        print("I/O error: {0}: {1}".format(exc.filename or output,
                                           exc.strerror), file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
