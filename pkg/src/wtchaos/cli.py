"""Command line entry point.

Each subcommand loads a TOML config, runs one analysis from
:mod:`wtchaos.report` and writes its result to stdout or, with ``--out``,
to a file in that directory.  Exit codes: 0 on success, 1 for config or
precondition failures, 2 for numeric-range failures.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Callable, Dict, List, Optional, Tuple

from . import __version__
from . import report as rp
from .config import ExperimentConfig, load_config
from .errors import ChaosError, ConfigError, NumericRangeError

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2


def _phi(cfg):
    return 'phi.csv', rp.phi_rows(cfg)


def _orbit(cfg):
    return 'orbit.csv', rp.orbit_rows(cfg)


def _density(cfg):
    ci = rp.density_result(cfg)
    d = ci.to_json()
    d['s'] = [v.to_json() for v in ci.s]
    return 'density.json', rp.to_json_text(d)


def _dccw(cfg):
    return 'dccw.json', rp.to_json_text(rp.dccw_result(cfg))


def _synthesize(cfg):
    return 'synthesis.json', rp.to_json_text(rp.synthesis_result(cfg))


def _verify(cfg):
    return 'verify.json', rp.to_json_text(rp.verify_result(cfg))


def _pair(cfg):
    prof, verdict = rp.pair_result(cfg)
    return 'pair.json', rp.to_json_text({'profile': prof.to_json(), 'verdict': verdict})


def _mirror(cfg):
    return 'mirror.json', rp.to_json_text(rp.mirror_result(cfg))


COMMANDS: Dict[str, Tuple[Callable, str]] = {
    'phi': (_phi, 'weight cocycle phi_n(x) for x in K'),
    'orbit': (_orbit, 'orbit norms ||T^n y||_p of the configured vector'),
    'density': (_density, 'decay sets A_delta of chi_K and their density estimates'),
    'dccw-check': (_dccw, 'both criterion conditions side by side'),
    'synthesize': (_synthesize, 'synthesis plan and irregular vector'),
    'verify': (_verify, 'decay along A and growth lower bounds along B'),
    'pair-test': (_pair, 'distributional pair test of y against 0'),
    'mirror-check': (_mirror, 'two-component mirror example on Z x Z_2'),
    'report': (None, 'all analyses: JSON report, CSV series and manifest'),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', required=True, help='TOML experiment config')
    common.add_argument('--out', default=None, help='output directory')
    common.add_argument('--mode', choices=('rational', 'log'), default=None,
                        help='exact rational or log-domain arithmetic (overrides config)')
    common.add_argument('--horizon', type=int, default=None,
                        help='override the horizon N')
    parser = argparse.ArgumentParser(
        prog='wtchaos', description='Distributional-chaos diagnostics for weighted translations.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)
    for name, (_, help_) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_, description=help_)
    return parser


def _load(args) -> ExperimentConfig:
    cfg = load_config(args.config)
    if args.horizon is not None or args.mode is not None:
        cfg = cfg.with_overrides(N=args.horizon, mode=args.mode)
    return cfg


def _write(out_dir: str, name: str, text: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, 'w', encoding='utf-8', newline='') as fh:
        fh.write(text)
    return path


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load(args)
        if args.command == 'report':
            out = args.out or cfg.out
            rp.write_report(cfg, out)
            print(os.path.join(out, 'report.json'))
            return EXIT_OK
        fn = COMMANDS[args.command][0]
        name, text = fn(cfg)
        if args.out:
            print(_write(args.out, name, text))
        else:
            sys.stdout.write(text)
    except NumericRangeError as e:
        print(f'wtchaos: numeric range error: {e}', file=sys.stderr)
        return EXIT_NUMERIC
    except ConfigError as e:
        key = f' [{e.key}]' if e.key else ''
        print(f'wtchaos: config error{key}: {e}', file=sys.stderr)
        return EXIT_CONFIG
    except ChaosError as e:
        print(f'wtchaos: {type(e).__name__}: {e}', file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
