"""Exact top intersections of tautological classes on genus-one moduli
spaces and their blowups, together with the combinatorics of the blowup
strata and self-verification suites.

The three layers:

* :mod:`tautrec.brackets` evaluates the bracket numbers by memoized exact
  recursion (string-type reduction, point transfer, string/dilaton bases);
* :mod:`tautrec.strata` models the rooted-partition strata, their
  degeneration order, and the structural maps between them;
* :mod:`tautrec.oracle` re-derives everything by independent brute force
  and reports disagreements.

`tautrec.cli` provides the command-line front end (``tautrec eval``,
``tautrec table``, ``tautrec verify``).
"""

from .brackets import (
    ZERO,
    BracketKey,
    MemoCache,
    Rational,
    ZeroSentinel,
    canonical_key,
    corollary_closed_form,
    descending,
    eval_bracket,
    eval_genus0_psi,
    eval_genus1_hodge,
    eval_genus1_psi,
    evaluate,
    string_step,
    transfer_step,
)
from .oracle import (
    VerificationReport,
    genus0_string,
    labeled_bracket,
    verify_bases,
    verify_confluence,
    verify_corollary,
    verify_strata,
)
from .strata import (
    AUX_P,
    AUX_Q,
    Label,
    RootedPartition,
    canonical_text,
    enumerate_A1,
    enumerate_A1_IJ,
    eta,
    fiber,
    forget_stratum,
    i_labels,
    j_labels,
    linear_extension,
    mu,
    pair_stratum,
    precedes,
    sentinel_fiber_count,
)

__version__ = "0.1.0"

__all__ = [
    "ZERO",
    "AUX_P",
    "AUX_Q",
    "BracketKey",
    "Label",
    "MemoCache",
    "Rational",
    "RootedPartition",
    "VerificationReport",
    "ZeroSentinel",
    "canonical_key",
    "canonical_text",
    "corollary_closed_form",
    "descending",
    "enumerate_A1",
    "enumerate_A1_IJ",
    "eta",
    "eval_bracket",
    "eval_genus0_psi",
    "eval_genus1_hodge",
    "eval_genus1_psi",
    "evaluate",
    "fiber",
    "forget_stratum",
    "genus0_string",
    "i_labels",
    "j_labels",
    "labeled_bracket",
    "linear_extension",
    "mu",
    "pair_stratum",
    "precedes",
    "sentinel_fiber_count",
    "string_step",
    "transfer_step",
    "verify_bases",
    "verify_confluence",
    "verify_corollary",
    "verify_strata",
]
