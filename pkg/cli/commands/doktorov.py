"""
doktorov: molecule file -> Doktorov parameter file.
"""

from logging import getLogger

from cli.io import RunRecorder, write_model
from cli.pipeline import load_molecule, params_to_file

logger = getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("doktorov", help="compute Doktorov parameters of a molecule")
    parser.add_argument("molecule", help="molecule file (cartesian or duschinsky form)")
    parser.add_argument("-o", "--output", required=True, help="parameter file to write")
    parser.set_defaults(func=run)


def run(args, recorder: RunRecorder) -> int:
    recorder.add_input(args.molecule)
    params = load_molecule(args.molecule)
    write_model(args.output, params_to_file(params, recorder.manifest_for(args.output)))
    recorder.add_output(args.output)
    recorder.finish(args.output)
    logger.info("Wrote parameters for %d modes to %s", params.num_modes, args.output)
    return 0
