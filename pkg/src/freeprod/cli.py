"""Command-line front end.

Exit codes:

* 0: success;
* 1: a hypothesis or domain violation, or a verification/simulation check
  that did not pass;
* 2: I/O, JSON, word-syntax or invalid-algebra errors (argparse usage
  errors also exit with 2).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import TracialAlgebra, algebra_from_dict
from .errors import (
    AmbientTooSmall,
    DomainError,
    FreeProductError,
    HypothesisViolated,
    InvalidAlgebra,
    ShapeMismatch,
)
from .exact import as_fraction
from .moments.lemma import (
    FreenessReport,
    haar_moments,
    verify_corollary32,
    verify_lemma31,
)
from .moments.syntax import WordSyntaxError, parse_word
from .moments.trace import word_trace
from .oracle import empirical_word_traces, generic_position_trials, two_projection_spectrum
from .report import MomentResult, SimulationSummary, render_report
from .structure import decompose, decompose_by_induction, two_projection_structure, vn_decompose

__all__ = ["RunConfig", "run", "main", "default_seed", "load_algebra"]

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2

DEFAULT_N = 1000
DEFAULT_TRIALS = 50
DEFAULT_MAX_LEN = 8
DEFAULT_SEED = 42
DEFAULT_RANK_N = 40
DEFAULT_RANK_TRIALS = 100


def default_seed() -> int:
    """``FREEPROD_SEED`` if set, else 42."""
    env = os.environ.get("FREEPROD_SEED")
    return int(env) if env not in (None, "") else DEFAULT_SEED


def load_algebra(source: str) -> TracialAlgebra:
    """Read an algebra from a JSON file path or from inline JSON text.

    Inline text starting with ``{`` or ``[`` is parsed directly; a bare list
    is taken as the ``summands`` list.
    """
    text = source.strip()
    if not text.startswith(("{", "[")):
        text = Path(source).read_text()
    data = json.loads(text)
    if isinstance(data, list):
        data = {"summands": data}
    return algebra_from_dict(data)


@dataclass
class RunConfig:
    command: str
    action: str | None = None
    left: str | None = None
    right: str | None = None
    words: list[str] = field(default_factory=list)
    alpha: str | None = None
    beta: str | None = None
    m: int | None = None
    n: int | None = None
    l: int | None = None
    weights: str | None = None
    samples: int = 100
    max_len: int = DEFAULT_MAX_LEN
    k_max: int = 8
    N: int | None = None
    trials: int | None = None
    seed: int | None = None
    engine: str = "closed"
    fmt: str = "text"
    csv: str | None = None

    @property
    def effective_seed(self) -> int:
        return default_seed() if self.seed is None else self.seed


def _need(value, flag):
    if value is None:
        raise _UsageError(f"{flag} is required")
    return value


class _UsageError(Exception):
    pass


def _weights(cfg: RunConfig):
    return [as_fraction(w) for w in _need(cfg.weights, "--weights").split(",")]


def _algebras(cfg: RunConfig):
    return load_algebra(_need(cfg.left, "--left")), load_algebra(_need(cfg.right, "--right"))


def _cmd_decompose(cfg):
    A, B = _algebras(cfg)
    engine = decompose_by_induction if cfg.engine == "induction" else decompose
    return EXIT_OK, engine(A, B)


def _cmd_vn(cfg):
    return EXIT_OK, vn_decompose(*_algebras(cfg))


def _cmd_twoproj(cfg):
    return EXIT_OK, two_projection_structure(_need(cfg.alpha, "--alpha"), _need(cfg.beta, "--beta"))


def _cmd_moments(cfg):
    A, B = _algebras(cfg)
    if not cfg.words:
        raise _UsageError("at least one --word is required")
    return EXIT_OK, MomentResult({w: word_trace(parse_word(w, A, B), A, B) for w in cfg.words})


def _sim_twoproj(cfg, N, trials, seed):
    alpha, beta = _need(cfg.alpha, "--alpha"), _need(cfg.beta, "--beta")
    sample = two_projection_spectrum(alpha, beta, N, trials, seed)
    a, b = sample.achieved_alpha, sample.achieved_beta
    c, r = float(a + b - 2 * a * b), 2 * math.sqrt(float(a * b * (1 - a) * (1 - b)))
    expected = {"atom1_mass": float(max(0, a + b - 1)), "atom0_mass": float(max(0, a - b)),
                "support": [c - r, c + r]}
    tol = 2 * sample.atom_stderr + 2 / N
    passed = abs(sample.atom1_mass - expected["atom1_mass"]) <= tol
    if cfg.csv:
        Path(cfg.csv).write_text(sample.to_csv())
    params = {"alpha": str(as_fraction(alpha)), "beta": str(as_fraction(beta)), "N": N,
              "trials": trials, "seed": seed, "atom_tolerance": tol}
    return SimulationSummary("two-projection spectrum of PQP", params, sample.summary(), expected, passed)


def _sim_word(cfg, N, trials, seed):
    A, B = _algebras(cfg)
    if not cfg.words:
        raise _UsageError("at least one --word is required")
    words = [parse_word(w, A, B) for w in cfg.words]
    emp = empirical_word_traces(A, B, words, N, trials, seed)
    Aa, Ba = emp[0].achieved_left, emp[0].achieved_right
    measured, expected, passed = {}, {}, True
    for text, w, e in zip(cfg.words, words, emp):
        exact = complex(word_trace(parse_word(text, Aa, Ba), Aa, Ba))
        tol = 3 * e.stderr + len(w.reduced()) ** 2 / N
        ok = abs(e.mean - exact) <= tol
        passed = passed and ok
        measured[text] = {"re": e.mean.real, "im": e.mean.imag, "stderr": e.stderr,
                          "tolerance": tol, "ok": ok}
        expected[text] = {"re": exact.real, "im": exact.imag}
    params = {"N": N, "trials": trials, "seed": seed}
    return SimulationSummary("empirical word traces against exact values at achieved weights",
                             params, measured, expected, passed)


def _sim_rank(cfg, N, trials, seed):
    res = generic_position_trials(N, trials, seed)
    good = sum(r.ok for r in res)
    measured = {"holds": f"{good}/{len(res)}",
                "failures": [[r.p_rank, r.q_rank, r.observed] for r in res if not r.ok]}
    params = {"N": N, "trials": trials, "seed": seed}
    return SimulationSummary("intersection rank against max(0, rank P + rank Q - N)",
                             params, measured, {"holds": f"{len(res)}/{len(res)}"}, good == len(res))


def _cmd_simulate(cfg):
    seed = cfg.effective_seed
    if cfg.action == "rank":
        N = cfg.N or DEFAULT_RANK_N
        trials = cfg.trials or DEFAULT_RANK_TRIALS
        summary = _sim_rank(cfg, N, trials, seed)
    else:
        N = cfg.N or DEFAULT_N
        trials = cfg.trials or DEFAULT_TRIALS
        summary = (_sim_twoproj if cfg.action == "twoproj" else _sim_word)(cfg, N, trials, seed)
    return (EXIT_OK if summary.passed else EXIT_VIOLATION), summary


def _cmd_verify(cfg):
    seed = cfg.effective_seed
    if cfg.action == "lemma31":
        weights = _weights(cfg)
        m = cfg.m if cfg.m is not None else len(weights)
        rep = verify_lemma31(m, _need(cfg.n, "--n"), weights, cfg.l, cfg.samples, cfg.max_len, seed)
    elif cfg.action == "corollary32":
        rep = verify_corollary32(_need(cfg.n, "--n"), _weights(cfg), cfg.samples, seed, cfg.l)
    else:
        A = load_algebra(_need(cfg.left, "--left"))
        mom = haar_moments(A, cfg.k_max)
        rep = FreenessReport(f"haar k_max={cfg.k_max}")
        for k, v in sorted(mom.items()):
            rep.record(f"k={k}", v - 1 if k == 0 else v, abs(k))
    return (EXIT_OK if rep.passed else EXIT_VIOLATION), rep


_COMMANDS = {
    "decompose": _cmd_decompose,
    "vn": _cmd_vn,
    "twoproj": _cmd_twoproj,
    "moments": _cmd_moments,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns ``(exit code, report or error text)``."""
    try:
        code, obj = _COMMANDS[cfg.command](cfg)
        return code, render_report(obj, cfg.fmt)
    except (HypothesisViolated, DomainError) as exc:
        return EXIT_VIOLATION, f"error: {exc}"
    except (OSError, json.JSONDecodeError, WordSyntaxError, InvalidAlgebra, ShapeMismatch,
            AmbientTooSmall, _UsageError, KeyError, TypeError, ValueError) as exc:
        return EXIT_INPUT, f"error: {exc}"
    except FreeProductError as exc:
        return EXIT_INPUT, f"error: {exc}"


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="freeprod",
                                description="Structure and moments of reduced free products "
                                            "of finite-dimensional tracial C*-algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--left", help="JSON file or inline JSON for A")
    pair.add_argument("--right", help="JSON file or inline JSON for B")

    mc = argparse.ArgumentParser(add_help=False)
    mc.add_argument("--N", type=int, help=f"matrix size (default {DEFAULT_N}; {DEFAULT_RANK_N} for rank)")
    mc.add_argument("--trials", type=int,
                    help=f"independent trials (default {DEFAULT_TRIALS}; {DEFAULT_RANK_TRIALS} for rank)")

    seed = argparse.ArgumentParser(add_help=False)
    seed.add_argument("--seed", type=int, help=f"master seed (default $FREEPROD_SEED or {DEFAULT_SEED})")

    proj = argparse.ArgumentParser(add_help=False)
    proj.add_argument("--alpha", help="trace of p, e.g. 7/10")
    proj.add_argument("--beta", help="trace of q")

    d = sub.add_parser("decompose", parents=[common, pair], help="structure of A * B")
    d.add_argument("--engine", choices=["closed", "induction"], default="closed")
    sub.add_parser("vn", parents=[common, pair], help="von Neumann algebra free product")
    sub.add_parser("twoproj", parents=[common, proj], help="C*(p, q) for two free projections")
    mo = sub.add_parser("moments", parents=[common, pair], help="exact trace of words")
    mo.add_argument("--word", dest="words", action="append", default=[])

    sim = sub.add_parser("simulate", help="random-matrix checks")
    simsub = sim.add_subparsers(dest="action", required=True)
    st = simsub.add_parser("twoproj", parents=[common, proj, mc, seed])
    st.add_argument("--csv", help="write pooled eigenvalues to this CSV file")
    sw = simsub.add_parser("word", parents=[common, pair, mc, seed])
    sw.add_argument("--word", dest="words", action="append", default=[])
    simsub.add_parser("rank", parents=[common, mc, seed])

    ver = sub.add_parser("verify", help="exact freeness checks")
    versub = ver.add_subparsers(dest="action", required=True)
    vl = versub.add_parser("lemma31", parents=[common, seed],
                           help="tau(w u^r) = 0 for centered alternating words")
    vl.add_argument("--m", type=int)
    vl.add_argument("--n", type=int)
    vl.add_argument("--l", type=int)
    vl.add_argument("--weights", help="comma-separated traces of the projections, e.g. 1/2,1/2")
    vl.add_argument("--samples", type=int, default=100)
    vl.add_argument("--max-len", dest="max_len", type=int, default=DEFAULT_MAX_LEN)
    vc = versub.add_parser("corollary32", parents=[common, seed],
                           help="tau(b u^k) = 0 on the algebra generated by the rotated projections")
    vc.add_argument("--n", type=int)
    vc.add_argument("--l", type=int)
    vc.add_argument("--weights")
    vc.add_argument("--samples", type=int, default=100)
    vh = versub.add_parser("haar", parents=[common], help="Haar moments of a diffuse summand")
    vh.add_argument("--left", help="algebra with a diffuse summand")
    vh.add_argument("--k-max", dest="k_max", type=int, default=8)
    return p


def config_from_args(argv=None) -> RunConfig:
    ns = _parser().parse_args(argv)
    known = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in known and v is not None})


def main(argv=None) -> int:
    cfg = config_from_args(argv)
    code, text = run(cfg)
    print(text, file=sys.stderr if text.startswith("error:") else sys.stdout)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
