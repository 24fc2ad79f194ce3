"""
Glue between files and the numerical core: loading parameters, parsing
index flags and preparing the measured state.
"""

from logging import getLogger
from typing import Dict, List, Optional

import numpy as np

from cli.io import read_model
from functions.dynamics import LocalizationMap
from functions.excitation import (
    DriveSpec,
    detuned_drive_displacements,
    drive_displacement,
    pre_excite_modes,
)
from functions.exceptions import InvalidParameter
from functions.gaussian import GaussianState, apply_doktorov, vacuum
from functions.vibronic import (
    DoktorovParams,
    MoleculeData,
    doktorov_params,
    doktorov_params_from_duschinsky,
)
from vibronic_gbs.schemas import (
    DriveFile,
    LocalizationFile,
    MoleculeFile,
    MoleculeInput,
    ParamsFile,
)

logger = getLogger(__name__)


def load_molecule(path: str) -> DoktorovParams:
    data = read_model(path, MoleculeInput)
    if isinstance(data, MoleculeFile):
        mol = MoleculeData(
            masses=data.masses,
            geom_initial=data.geom_initial,
            geom_final=data.geom_final,
            modes_initial=np.array(data.modes_initial).T,
            modes_final=np.array(data.modes_final).T,
            freq_initial=data.freq_initial,
            freq_final=data.freq_final,
        )
        return doktorov_params(mol)
    return doktorov_params_from_duschinsky(
        data.U_D, data.d, data.freq_initial, data.freq_final
    )


def params_to_file(params: DoktorovParams, manifest: str) -> ParamsFile:
    return ParamsFile(
        manifest=manifest,
        U_L=params.U_L.tolist(),
        U_R=params.U_R.tolist(),
        sigma=params.sigma.tolist(),
        beta=params.beta.tolist(),
        freq_initial=params.freq_initial.tolist(),
        freq_final=params.freq_final.tolist(),
        huang_rhys=params.huang_rhys.tolist(),
    )


def load_params(path: str) -> DoktorovParams:
    data = read_model(path, ParamsFile)
    return DoktorovParams(
        U_L=data.U_L,
        U_R=data.U_R,
        sigma=data.sigma,
        beta=data.beta,
        freq_final=data.freq_final,
        freq_initial=data.freq_initial,
    )


def parse_index_list(text: str, num_modes: int) -> List[int]:
    """'1,3' -> [0, 2]; indices are 1-based on the command line."""
    try:
        indices = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise InvalidParameter(f"expected a comma-separated list of integers, got {text!r}") from exc
    if not indices:
        raise InvalidParameter("empty mode list")
    for index in indices:
        if not 1 <= index <= num_modes:
            raise InvalidParameter(f"mode {index} out of range 1..{num_modes}")
    return [index - 1 for index in indices]


def parse_pre_excite(items: Optional[List[str]], num_modes: int) -> Dict[int, complex]:
    """['1=1.0', '3=0.5+0.2j'] -> {0: 1+0j, 2: 0.5+0.2j}."""
    betas: Dict[int, complex] = {}
    for item in items or []:
        mode_text, sep, beta_text = item.partition("=")
        if not sep:
            raise InvalidParameter(f"--pre-excite expects MODE=BETA, got {item!r}")
        try:
            mode = int(mode_text)
            beta = complex(beta_text.replace(" ", ""))
        except ValueError as exc:
            raise InvalidParameter(f"cannot parse --pre-excite {item!r}") from exc
        if not 1 <= mode <= num_modes:
            raise InvalidParameter(f"--pre-excite mode {mode} out of range 1..{num_modes}")
        betas[mode - 1] = betas.get(mode - 1, 0j) + beta
    return betas


def load_drive(path: str, params: DoktorovParams) -> Dict[int, complex]:
    """Displacements of the ground-state modes produced by a drive file."""
    data = read_model(path, DriveFile)
    spec = DriveSpec(
        charges=data.charges,
        coeffs=data.coeffs,
        field=[complex(re, im) for re, im in data.field],
        duration=data.duration,
        target_mode=data.target_mode - 1,
        start=data.start,
    )
    if spec.num_modes != params.num_modes:
        raise InvalidParameter(
            f"drive couples {spec.num_modes} modes but the parameters have {params.num_modes}"
        )
    if data.carrier is None:
        return {spec.target_mode: drive_displacement(spec)}
    betas = detuned_drive_displacements(
        spec, params.freq_initial, data.carrier, counter_rotating=data.counter_rotating
    )
    return {mode: complex(beta) for mode, beta in enumerate(betas)}


def collect_pre_excitation(args, params: DoktorovParams) -> Dict[int, complex]:
    betas = parse_pre_excite(getattr(args, "pre_excite", None), params.num_modes)
    drive_path = getattr(args, "drive", None)
    if drive_path:
        for mode, beta in load_drive(drive_path, params).items():
            betas[mode] = betas.get(mode, 0j) + beta
    return betas


def prepare_state(params: DoktorovParams, pre_excitation: Dict[int, complex]) -> GaussianState:
    """Vacuum, optional pre-excitation of ground-state modes, then the transition."""
    state = pre_excite_modes(vacuum(params.num_modes), pre_excitation)
    return apply_doktorov(state, params)


def load_localization(path: str, params: DoktorovParams) -> LocalizationMap:
    data = read_model(path, LocalizationFile)
    U_l = np.array(data.U_l_real, dtype=np.complex128)
    if data.U_l_imag is not None:
        U_l = U_l + 1j * np.array(data.U_l_imag)
    freq = data.freq if data.freq is not None else params.freq_final
    return LocalizationMap(U_l=U_l, freq=freq)
