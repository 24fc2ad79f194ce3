"""
dynamics: marginals of a localized mode over time.
"""

from logging import getLogger

from cli.commands.options import add_pre_excitation_arguments
from cli.commands.sample import coexcitation_entry
from cli.io import RunRecorder, write_model
from cli.pipeline import (
    collect_pre_excitation,
    load_localization,
    load_params,
    parse_index_list,
    prepare_state,
)
from functions.dynamics import coexcitation_series, mean_photon_series, time_series
from functions.exceptions import InvalidParameter
from vibronic_gbs.schemas import TimeSeriesFile

logger = getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("dynamics", help="time series of localized-mode marginals")
    parser.add_argument("params", help="Doktorov parameter file")
    parser.add_argument("localization", help="localization file")
    parser.add_argument("-o", "--output", required=True, help="time-series file to write")
    parser.add_argument(
        "--times", type=float, nargs="+", required=True, help="times in femtoseconds"
    )
    parser.add_argument("--mode", type=int, required=True, help="localized mode (1-based)")
    parser.add_argument("--cutoff", type=int, help="largest photon number per mode")
    parser.add_argument("--coexcite", help="comma-separated localized modes for joint tables")
    parser.add_argument("--workers", type=int, help="threads evaluating time points")
    add_pre_excitation_arguments(parser)
    parser.set_defaults(func=run)


def run(args, recorder: RunRecorder) -> int:
    recorder.add_input(args.params)
    recorder.add_input(args.localization)
    recorder.add_input(args.drive)
    params = load_params(args.params)
    loc = load_localization(args.localization, params)
    if not 1 <= args.mode <= loc.num_modes:
        raise InvalidParameter(f"--mode {args.mode} out of range 1..{loc.num_modes}")
    state = prepare_state(params, collect_pre_excitation(args, params))

    series = time_series(state, loc, args.times, args.mode - 1, args.cutoff, args.workers)
    coexcitation = None
    if args.coexcite:
        modes = parse_index_list(args.coexcite, loc.num_modes)
        tables = coexcitation_series(state, loc, args.times, modes, args.cutoff, args.workers)
        coexcitation = [coexcitation_entry(table) for table in tables]

    result = TimeSeriesFile(
        manifest=recorder.manifest_for(args.output),
        mode=args.mode,
        cutoff=args.cutoff,
        times_fs=list(args.times),
        distributions=[d.table.tolist() for d in series],
        coverage=[d.coverage for d in series],
        mean_photons=mean_photon_series(state, loc, args.times).tolist(),
        coexcitation=coexcitation,
    )
    write_model(args.output, result)
    recorder.add_output(args.output)
    recorder.finish(args.output)
    logger.info("Wrote %d time points to %s", len(series), args.output)
    return 0
