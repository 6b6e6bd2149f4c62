"""Command-line front end: ``entangled-ess {analyze,sweep,verify,invade}``.

Game files are line-oriented ``key=value`` text; ``#`` starts a comment::

    players=2
    alpha=3
    beta=0
    gamma=5
    delta=1

Three-player files use ``alpha1 alpha2 alpha3 alpha5 alpha6 alpha8``.

Exit codes: 0 success, 1 usage or parse error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import closed_form as cf
from . import dynamics, equilibrium
from .game_model import SymmetricGame2, SymmetricGame3
from .quantum_engine import oracle_payoff

KEYS = {
    2: ("alpha", "beta", "gamma", "delta"),
    3: ("alpha1", "alpha2", "alpha3", "alpha5", "alpha6", "alpha8"),
}
CSV_HEADER = ("b2", "candidate_kind", "p", "is_ne", "ne_strict", "is_ess", "margin_ratio")
DEFAULT_SEED = 42

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class GameFileError(ValueError):
    pass


@dataclass(frozen=True)
class GameFile:
    players: int
    values: dict

    def to_game(self):
        vals = [self.values[k] for k in KEYS[self.players]]
        return SymmetricGame2(*vals) if self.players == 2 else SymmetricGame3(*vals)


def parse_game_file(text: str, source: str = "<game>") -> GameFile:
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise GameFileError(f"{source}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in entries:
            raise GameFileError(f"{source}:{lineno}: duplicate key {key!r} (first on line {entries[key][1]})")
        entries[key] = (value, lineno)

    if "players" not in entries:
        raise GameFileError(f"{source}: missing key 'players'")
    players_text, players_line = entries.pop("players")
    if players_text not in ("2", "3"):
        raise GameFileError(f"{source}:{players_line}: players must be 2 or 3, got {players_text!r}")
    players = int(players_text)

    allowed = KEYS[players]
    for key, (_, lineno) in entries.items():
        if key not in allowed:
            raise GameFileError(f"{source}:{lineno}: unknown key {key!r} for a {players}-player game")
    missing = [k for k in allowed if k not in entries]
    if missing:
        raise GameFileError(f"{source}: missing keys {', '.join(missing)}")

    values = {}
    for key in allowed:
        text_value, lineno = entries[key]
        try:
            number = float(text_value)
        except ValueError:
            raise GameFileError(f"{source}:{lineno}: {key} is not a number: {text_value!r}") from None
        if not math.isfinite(number):
            raise GameFileError(f"{source}:{lineno}: {key} must be finite, got {text_value!r}")
        values[key] = number
    return GameFile(players, values)


def load_game(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GameFileError(f"{path}: cannot read game file: {exc.strerror}") from None
    return parse_game_file(text, source=path).to_game()


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    return repr(float(x))


def cmd_analyze(game_path: str, b2: float, out=None) -> int:
    out = out or sys.stdout
    game = load_game(game_path)
    _check_unit("--b2", b2)
    candidates = equilibrium.find_symmetric_ne(game, b2)
    print(f"{game!r} at b2={b2!r}", file=out)
    if candidates and candidates[0].continuum:
        print("every strategy is a symmetric NE (Nash condition holds identically)", file=out)
    if not candidates:
        print("no symmetric NE found", file=out)
    for c in candidates:
        v = c.verdict
        print(
            f"  {c.kind.value:7s} p={c.p:.6f}  NE={'yes' if c.is_ne else 'no'}"
            f" (condition 1 {v.condition1.value})  ESS={c.is_ess.value}"
            f" (condition 2 {v.condition2.value})  margin_ratio={c.margin_ratio:.6g}",
            file=out,
        )
    return EXIT_OK


def sweep_rows(game, grid) -> list[tuple]:
    rows = []
    for b2 in grid:
        b2 = float(b2)
        points, continuum = equilibrium.candidate_points(game, b2, include_non_ne=True)
        for p in points:
            c = equilibrium.evaluate_candidate(game, b2, p, continuum)
            rows.append((b2, c.kind.value, c.p, c.is_ne, c.ne_strict, c.is_ess.value, c.margin_ratio))
    return rows


def cmd_sweep(game_path: str, b2_min: float, b2_max: float, steps: int, out_path: str, out=None) -> int:
    out = out or sys.stdout
    game = load_game(game_path)
    if not 0.0 <= b2_min <= b2_max <= 1.0:
        raise GameFileError(f"need 0 <= b2-min <= b2-max <= 1, got {b2_min!r}, {b2_max!r}")
    if steps < 2:
        raise GameFileError(f"--steps must be at least 2, got {steps}")
    grid = np.linspace(b2_min, b2_max, steps)
    rows = sweep_rows(game, grid)
    try:
        with open(out_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for b2, kind, p, is_ne, strict, is_ess, ratio in rows:
                writer.writerow((_fmt(b2), kind, _fmt(p), _fmt(is_ne), _fmt(strict), is_ess, _fmt(ratio)))
    except OSError as exc:
        raise GameFileError(f"{out_path}: cannot write CSV: {exc.strerror}") from None
    transitions = equilibrium.stability_transitions(game, grid)
    print(f"wrote {len(rows)} rows to {out_path}", file=out)
    if transitions:
        print(f"{len(transitions)} transitions:", file=out)
        for t in transitions:
            print(f"  {t}", file=out)
    else:
        print("no transitions", file=out)
    return EXIT_OK


def verify_game(game, samples: int, seed: int) -> float:
    """Largest |closed form - density matrix| over seeded random (b2, profile) draws, all players."""
    rng = np.random.default_rng(seed)
    n = game.n_players
    worst = 0.0
    for _ in range(samples):
        b2 = float(rng.uniform())
        probs = [float(x) for x in rng.uniform(size=n)]
        if n == 2:
            p, q = probs
            pairs = [("A", cf.payoff2(game, b2, p, q)), ("B", cf.payoff2(game, b2, q, p))]
        else:
            p, q, r = probs
            pairs = [
                ("A", cf.payoff3(game, b2, p, q, r)),
                ("B", cf.payoff3(game, b2, q, p, r)),
                ("C", cf.payoff3(game, b2, r, p, q)),
            ]
        for player, closed in pairs:
            worst = max(worst, abs(closed - oracle_payoff(game, b2, probs, player)))
    return worst


def cmd_verify(game_path: str, samples: int, seed: int = DEFAULT_SEED, tol: float = 1e-12, out=None) -> int:
    out = out or sys.stdout
    game = load_game(game_path)
    if samples < 1:
        raise GameFileError(f"--samples must be at least 1, got {samples}")
    worst = verify_game(game, samples, seed)
    ok = worst <= tol
    print(f"{samples} samples, seed {seed}: max |closed form - oracle| = {worst:.3e} (tol {tol:g}) -> "
          f"{'PASS' if ok else 'FAIL'}", file=out)  # fmt: skip
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_invade(game_path: str, b2: float, incumbent: float, mutant: float, epsilon: float, out=None) -> int:
    out = out or sys.stdout
    game = load_game(game_path)
    _check_unit("--b2", b2)
    try:
        scenario = dynamics.InvasionScenario(incumbent, mutant, epsilon)
    except ValueError as exc:
        raise GameFileError(str(exc)) from None
    run = dynamics.replicator_trajectory(game, b2, scenario)
    barrier = dynamics.invasion_barrier(game, b2, incumbent, mutant)
    shares = run.mutant_share
    print(f"incumbent {incumbent!r} vs mutant {mutant!r} at b2={b2!r}, initial share {epsilon!r}", file=out)
    print(
        f"  t_max={run.times[-1]:g}: final share {shares[-1]:.6g} (min {shares.min():.6g}, max {shares.max():.6g})",
        file=out,
    )
    print(f"  outcome: {run.outcome.value}", file=out)
    print(f"  invasion barrier: {'none' if barrier is None else format(barrier, '.6g')}", file=out)
    return EXIT_OK


def _check_unit(flag: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise GameFileError(f"{flag} must lie in [0, 1], got {value!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="entangled-ess", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="list symmetric NE and their ESS status")
    p.add_argument("--game", required=True)
    p.add_argument("--b2", type=float, required=True)

    p = sub.add_parser("sweep", help="classify candidates over a b2 grid and write CSV")
    p.add_argument("--game", required=True)
    p.add_argument("--b2-min", type=float, default=0.0)
    p.add_argument("--b2-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="compare closed-form payoffs with the density-matrix oracle")
    p.add_argument("--game", required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--tol", type=float, default=1e-12)

    p = sub.add_parser("invade", help="run one replicator invasion experiment")
    p.add_argument("--game", required=True)
    p.add_argument("--b2", type=float, required=True)
    p.add_argument("--incumbent", type=float, required=True)
    p.add_argument("--mutant", type=float, required=True)
    p.add_argument("--epsilon", type=float, default=dynamics.DEFAULT_EPSILON)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return cmd_analyze(args.game, args.b2)
        if args.command == "sweep":
            return cmd_sweep(args.game, args.b2_min, args.b2_max, args.steps, args.out)
        if args.command == "verify":
            return cmd_verify(args.game, args.samples, args.seed, args.tol)
        return cmd_invade(args.game, args.b2, args.incumbent, args.mutant, args.epsilon)
    except GameFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
