"""
marginals: exact single-mode distributions of the post-transition state.
"""

from logging import getLogger

from cli.commands.options import add_pre_excitation_arguments
from cli.io import RunRecorder, write_model
from cli.pipeline import collect_pre_excitation, load_params, prepare_state
from functions.sampler import single_mode_marginals
from vibronic_gbs.schemas import MarginalsFile

logger = getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("marginals", help="exact single-mode marginals")
    parser.add_argument("params", help="Doktorov parameter file")
    parser.add_argument("-o", "--output", required=True, help="marginals file to write")
    parser.add_argument("--cutoff", type=int, help="largest photon number per mode")
    add_pre_excitation_arguments(parser)
    parser.set_defaults(func=run)


def run(args, recorder: RunRecorder) -> int:
    recorder.add_input(args.params)
    recorder.add_input(args.drive)
    params = load_params(args.params)
    state = prepare_state(params, collect_pre_excitation(args, params))
    marginals = single_mode_marginals(state, args.cutoff)
    result = MarginalsFile(
        manifest=recorder.manifest_for(args.output),
        cutoff=args.cutoff,
        marginals={str(m.modes[0] + 1): m.table.tolist() for m in marginals},
        coverage={str(m.modes[0] + 1): m.coverage for m in marginals},
    )
    write_model(args.output, result)
    recorder.add_output(args.output)
    recorder.finish(args.output)
    logger.info("Wrote marginals of %d modes to %s", len(marginals), args.output)
    return 0
