"""
sample: draw photon patterns and summarize them.

Samples are drawn in the final normal modes, or, with a localization file,
in the localized modes after free evolution. ``--keep-modes`` traces out
every other mode before sampling.
"""

import os
from logging import getLogger
from typing import Optional, Sequence

import numpy as np

from cli.commands.options import add_pre_excitation_arguments
from cli.io import RunRecorder, write_model, write_samples_csv
from cli.pipeline import (
    collect_pre_excitation,
    load_localization,
    load_params,
    parse_index_list,
    prepare_state,
)
from functions.distribution import Distribution
from functions.dynamics import evolve
from functions.exceptions import InvalidParameter
from functions.gaussian import reduce
from functions.probabilities import MAX_TOTAL_PHOTONS
from functions.sampler import (
    ChainRuleSampler,
    SamplerConfig,
    empirical_joint_table,
    empirical_marginals,
)
from vibronic_gbs.schemas import CoexcitationTable, SampleSummary

logger = getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("sample", help="draw photon-number samples")
    parser.add_argument("params", help="Doktorov parameter file")
    parser.add_argument("-o", "--output", required=True, help="sample CSV to write")
    parser.add_argument("--summary", help="summary file (default: <output stem>.summary.json)")
    parser.add_argument("--samples", type=int, help="number of samples")
    parser.add_argument("--seed", type=int, default=0, help="non-negative random seed")
    parser.add_argument("--cutoff", type=int, help="largest photon number per mode")
    parser.add_argument(
        "--max-total-photons",
        type=int,
        default=MAX_TOTAL_PHOTONS,
        help="cap on the photons of a whole pattern",
    )
    parser.add_argument("--modes", help="comma-separated modes for the co-excitation table")
    parser.add_argument("--workers", type=int, help="sampling threads")
    parser.add_argument(
        "--localization", metavar="FILE", help="sample the localized modes of this file"
    )
    parser.add_argument(
        "--time",
        type=float,
        default=0.0,
        help="femtoseconds of free evolution before sampling (needs --localization)",
    )
    parser.add_argument(
        "--keep-modes", help="comma-separated modes to sample; the others are traced out"
    )
    add_pre_excitation_arguments(parser)
    parser.set_defaults(func=run)


def coexcitation_entry(
    table: Distribution, labels: Optional[Sequence[int]] = None
) -> CoexcitationTable:
    """``labels`` maps table axes to 1-based modes; by default axis m is mode m + 1."""
    return CoexcitationTable(
        modes=[labels[m] if labels else m + 1 for m in table.modes],
        probability=table.coexcitation(),
        table={",".join(str(n) for n in key): p for key, p in table.as_dict().items()},
    )


def _columns(labels: Sequence[int], text: str, num_modes: int) -> list:
    """1-based modes in ``text`` -> positions among the sampled columns."""
    positions = []
    for mode in parse_index_list(text, num_modes):
        if mode + 1 not in labels:
            raise InvalidParameter(f"--modes {mode + 1} is not among the sampled modes {labels}")
        positions.append(labels.index(mode + 1))
    return positions


def run(args, recorder: RunRecorder) -> int:
    recorder.add_input(args.params)
    recorder.add_input(args.drive)
    recorder.add_input(args.localization)
    params = load_params(args.params)
    state = prepare_state(params, collect_pre_excitation(args, params))

    if args.localization:
        state = evolve(state, load_localization(args.localization, params), args.time)
    elif args.time:
        raise InvalidParameter("--time needs --localization")

    labels = list(range(1, state.num_modes + 1))
    if args.keep_modes:
        kept = parse_index_list(args.keep_modes, state.num_modes)
        if len(set(kept)) != len(kept):
            raise InvalidParameter(f"--keep-modes lists a mode twice: {args.keep_modes}")
        state = reduce(state, kept)
        labels = [m + 1 for m in kept]
    columns = _columns(labels, args.modes, params.num_modes) if args.modes else None

    cfg = SamplerConfig(
        cutoff=args.cutoff,
        seed=args.seed,
        max_total_photons=args.max_total_photons,
        num_samples=args.samples,
        workers=args.workers,
    )
    sampler = ChainRuleSampler(state, cfg)
    samples = np.asarray(sampler.run(), dtype=np.int64)

    write_samples_csv(args.output, samples, labels)
    recorder.add_output(args.output)

    coexcitation = None
    if columns:
        table = empirical_joint_table(samples, columns, cfg.cutoff)
        coexcitation = coexcitation_entry(table, labels)

    summary_path = args.summary or os.path.splitext(args.output)[0] + ".summary.json"
    summary = SampleSummary(
        manifest=recorder.manifest_for(args.output),
        samples_file=os.path.basename(args.output),
        modes=labels,
        localized=bool(args.localization),
        time_fs=args.time if args.localization else None,
        num_samples=cfg.num_samples,
        seed=cfg.seed,
        cutoff=cfg.cutoff,
        means=samples.mean(axis=0).tolist(),
        marginals={
            str(labels[m.modes[0]]): m.table.tolist()
            for m in empirical_marginals(samples, cfg.cutoff)
        },
        coexcitation=coexcitation,
        truncated_mass=sampler.max_truncated_mass,
    )
    write_model(summary_path, summary)
    recorder.add_output(summary_path)
    recorder.finish(args.output)
    logger.info("Wrote %d samples to %s and summary to %s", len(samples), args.output, summary_path)
    return 0
