from argparse import ArgumentParser


def add_pre_excitation_arguments(parser: ArgumentParser) -> None:
    """--pre-excite and --drive, shared by the verbs that prepare a state."""
    parser.add_argument(
        "--pre-excite",
        action="append",
        metavar="MODE=BETA",
        help="displace ground-state mode MODE (1-based) by BETA before the transition; repeatable",
    )
    parser.add_argument("--drive", metavar="FILE", help="drive file converted to a pre-excitation")
