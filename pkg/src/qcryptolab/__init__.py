"""Desk-scale laboratory for quantum protocols and toy classical ciphers.

Everything here is sized to be checked exhaustively or in closed form:
a dense statevector simulator with Bell measurement, teleportation and
BB84 built on it, von Neumann entropy and Holevo information, Shannon
ciphers with exact perfect-secrecy verification, a toy Feistel block
cipher, polynomial hashing, textbook RSA and Diffie-Hellman, and a
challenger/adversary game harness that estimates attack advantages with
confidence intervals.  None of the ciphers is secure; all of them are
honest laboratory specimens.
"""

from .bb84 import (
    Bb84Config,
    DetectionResult,
    ProtocolTranscript,
    SiftedResult,
    detect,
    detection_probability,
    detection_sweep,
    run_bb84,
    sift,
    transcript_to_json,
)
from .ciphers import (
    MAX_SECRECY_SPACE,
    BlockCipherSpec,
    PrgSpec,
    SecrecyReport,
    ShannonCipher,
    ShannonConditions,
    UhfSpec,
    bits_from_int,
    bits_to_int,
    check_perfect_secrecy,
    counter_prg,
    ecb_dec,
    ecb_enc,
    feistel_cipher,
    format_bits,
    otp_cipher,
    otp_dec,
    otp_enc,
    parse_bits,
    prg_expand,
    stream_dec,
    stream_enc,
    toy_block_dec,
    toy_block_enc,
    uhf_eval,
    xor_bits,
    zero_pad_prg,
)
from .entropy import (
    DensityMatrix,
    Ensemble,
    ProjectiveMeasurement,
    average_state,
    basis_measurement,
    bell_measurement,
    density_of,
    holevo_chi,
    measurement_mutual_information,
    partial_trace,
    pure_ensemble,
    relative_entropy,
    von_neumann_entropy,
)
from .errors import (
    DimensionError,
    InvalidPairError,
    LabError,
    LengthError,
    NormalizationError,
    NumericalError,
    ParameterError,
    QueryBudgetError,
    RangeError,
    SpaceTooLargeError,
    SupportError,
    UnknownNameError,
    UsageError,
)
from .games import (
    Adversary,
    AdvantageEstimate,
    adversary_names,
    build_adversary,
    build_scheme,
    estimate_bc_advantage,
    estimate_ddh_advantage,
    estimate_mr_advantage,
    estimate_parity_advantage,
    estimate_prg_advantage,
    estimate_rsa_advantage,
    estimate_ss_advantage,
    report_json,
    run_game_suite,
    scheme_names,
    ss_adversary_from_mr,
    ss_adversary_from_parity,
    suite_names,
    uhf_collision_game,
)
from .pubkey import (
    DhGroup,
    RsaKeyPair,
    dh_keygen,
    dh_public,
    dh_shared,
    is_prime,
    mod_exp,
    primes_below,
    rsa_dec,
    rsa_enc,
    rsa_gen,
    rsa_keypair_from_primes,
)
from .quantum import (
    BELL_STATES,
    CNOT,
    KET_0,
    KET_1,
    KET_MINUS,
    KET_PLUS,
    PHI_PLUS,
    Gate,
    H,
    I,
    StateVector,
    T,
    X,
    Y,
    Z,
    apply_gate,
    bell_branches,
    bell_measure,
    fidelity,
    make_qubit,
    measure,
    phase_shift,
    tensor,
)
from .teleport import TeleportOutcome, correction_gate, teleport, teleport_branches

__version__ = "0.1.0"
