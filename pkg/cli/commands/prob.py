"""
prob: exact probability of one photon pattern.
"""

from logging import getLogger

from cli.commands.options import add_pre_excitation_arguments
from cli.io import RunRecorder, write_model
from cli.pipeline import collect_pre_excitation, load_params, prepare_state
from functions.exceptions import InvalidParameter
from functions.probabilities import pattern_probability
from vibronic_gbs.schemas import ProbabilityFile

logger = getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("prob", help="exact probability of a photon pattern")
    parser.add_argument("params", help="Doktorov parameter file")
    parser.add_argument(
        "--pattern", required=True, help="comma-separated photon counts, one per mode"
    )
    parser.add_argument("-o", "--output", help="probability file to write")
    add_pre_excitation_arguments(parser)
    parser.set_defaults(func=run)


def _parse_pattern(text: str) -> list:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise InvalidParameter(f"--pattern expects comma-separated integers, got {text!r}") from exc


def run(args, recorder: RunRecorder) -> int:
    recorder.add_input(args.params)
    recorder.add_input(args.drive)
    params = load_params(args.params)
    pattern = _parse_pattern(args.pattern)
    state = prepare_state(params, collect_pre_excitation(args, params))
    probability = pattern_probability(state, pattern)
    print(repr(probability))
    if args.output:
        write_model(
            args.output,
            ProbabilityFile(
                manifest=recorder.manifest_for(args.output),
                pattern=pattern,
                probability=probability,
            ),
        )
        recorder.add_output(args.output)
        recorder.finish(args.output)
    return 0
