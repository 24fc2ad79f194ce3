"""CLI commands module."""

from cli.commands import doktorov, dynamics, marginals, prob, runs, sample


def register_commands(subparsers) -> None:
    """Register all verbs with the argument parser."""
    for module in (doktorov, sample, marginals, dynamics, prob, runs):
        module.register(subparsers)
