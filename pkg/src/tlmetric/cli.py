"""Command-line front end: ``tlmetric {verify,gram,render,spectrum,basis}``."""

from __future__ import annotations

import argparse
import ast
import cmath
import csv
import io
import json
import math
import operator
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .cupbasis import (
    Tableau,
    cup_string,
    enumerate_basis,
    render_cup_pattern,
    render_tableau,
    wmax_indices,
    wmax_sector,
)
from .diagrams import Word, evaluate_word, render_diagram
from .gram import gram_matrix, gram_wmax
from .scalars import QParam, default_tol, loop_weight
from .verify import spectrum_check, transfer_checks, verify_conjecture

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class UsageError(ValueError):
    pass


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def eval_r(expr: str, N: int) -> float:
    """Evaluate an r expression such as ``6``, ``N+1``, ``2N`` or ``N+pi``."""
    text = re.sub(r"(\d)\s*(N|pi|e)\b", r"\1*\2", expr.strip())
    names = {"N": N, "pi": math.pi, "e": math.e}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in names:
            return float(names[node.id])
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            return -ev(node.operand) if isinstance(node.op, ast.USub) else ev(node.operand)
        raise UsageError(f"unsupported r expression {expr!r}")

    try:
        return ev(ast.parse(text, mode="eval"))
    except SyntaxError:
        raise UsageError(f"cannot parse r expression {expr!r}") from None


def parse_N_list(text: str) -> list[int]:
    """``5``, ``2..8`` or ``2,4,6``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(\d+)\.\.(\d+)", part)
        if m:
            out.extend(range(int(m.group(1)), int(m.group(2)) + 1))
        elif part.isdigit():
            out.append(int(part))
        else:
            raise UsageError(f"cannot parse N specification {text!r}")
    return out


def parse_r_list(text: str, N: int) -> list[float]:
    return [eval_r(part, N) for part in text.split(",") if part.strip()]


def parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse number list {text!r}") from None


@dataclass
class RunConfig:
    command: str
    N: list
    n: Optional[int] = None
    r: str = "N+1"
    tol: float = 1e-9
    fmt: str = "json"
    out: Optional[str] = None

    def r_values(self, N: int) -> list[float]:
        values = parse_r_list(self.r, N)
        for r in values:
            if not r > N:
                raise UsageError(f"requires r > N (N={N}, r={r})")
        return values


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _verify_job(args):
    N, r, tol = args
    return verify_conjecture(N, r, tol)


def cmd_verify(cfg: RunConfig, jobs: int = 1) -> int:
    for N in cfg.N:
        if N < 2:
            raise UsageError("N must be at least 2")
    tasks = [(N, r, cfg.tol) for N in cfg.N for r in cfg.r_values(N)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_verify_job, tasks))
    else:
        reports = [_verify_job(t) for t in tasks]
    passed = all(rep.passed for rep in reports)
    if cfg.fmt == "text":
        lines = []
        for rep in reports:
            worst = max(max(s.residuals.values()) for s in rep.sectors)
            lines.append(f"N={rep.N} r={rep.r:.6g} pass={rep.passed} "
                         f"max_residual={worst:.3e} "
                         f"min_eig={min(s.min_eig for s in rep.sectors):.3e}")
        text = "\n".join(lines)
    elif len(reports) == 1:
        text = reports[0].to_json()
    else:
        text = json.dumps({"reports": [rep.to_dict() for rep in reports], "pass": passed},
                          indent=2)
    _emit(text, cfg.out)
    return EXIT_OK if passed else EXIT_FAIL


def _basis_meta(N: int, n: int, indices: Optional[Sequence[int]] = None) -> list[dict]:
    basis = enumerate_basis(N, n)
    indices = range(len(basis)) if indices is None else indices
    return [{"index": k, "shape": list(basis[k].tableau.shape), "word": str(basis[k].word),
             "pattern": cup_string(basis[k].cup_pattern)} for k in indices]


def cmd_gram(cfg: RunConfig, wmax: bool = False) -> int:
    if len(cfg.N) != 1:
        raise UsageError("gram takes a single N")
    N = cfg.N[0]
    (r,) = cfg.r_values(N)[:1] or (None,)
    p = QParam(r, N, cfg.tol)
    if wmax:
        n = wmax_sector(N)
        G = gram_wmax(N, p)
        meta = _basis_meta(N, n, wmax_indices(N))
    else:
        if cfg.n is None:
            raise UsageError("gram needs --n (or --wmax)")
        n = cfg.n
        if not 0 <= n <= N:
            raise UsageError(f"sector n={n} outside 0..{N}")
        G = gram_matrix(N, n, p).G
        meta = _basis_meta(N, n)
    if cfg.fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# N={N} n={n} r={r!r} wmax={wmax}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["basis"] + [m["word"] for m in meta])
        for m, row in zip(meta, G):
            writer.writerow([m["word"]] + [format(float(x), ".17g") for x in row])
        text = buf.getvalue()
    else:
        text = json.dumps({"N": N, "n": n, "r": r, "wmax": wmax, "basis": meta,
                           "matrix": [[float(x) for x in row] for row in G]}, indent=2)
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_render(N: int, word: Optional[str], tableau: Optional[str], n: Optional[int],
               half: bool, out: Optional[str]) -> int:
    if tableau is not None:
        if n is None:
            raise UsageError("--tableau needs --n")
        try:
            shape = tuple(int(x) for x in tableau.split(",") if x.strip())
        except ValueError:
            raise UsageError(f"cannot parse tableau {tableau!r}") from None
        try:
            t = Tableau(N, n, shape)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        v = next(v for v in enumerate_basis(N, n) if v.tableau == t)
        text = "\n".join([render_tableau(t), f"word: {v.word}",
                          f"cup pattern: {cup_string(v.cup_pattern)}",
                          render_cup_pattern(v.cup_pattern)])
        _emit(text, out)
        return EXIT_OK
    if word is None:
        raise UsageError("render needs --word or --tableau")
    try:
        w = Word.parse(word, N)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not half:
        _emit(f"{w}\n{render_diagram(evaluate_word(w))}", out)
        return EXIT_OK
    from .cupbasis import word_action_on_omega

    if n is None:
        if not w.letters:
            raise UsageError("--half with the empty word needs --n")
        n = w.letters[-1]  # tableau words start by applying e_n
    image = word_action_on_omega(w, n)
    if image is None:
        _emit(f"{w} Omega_{n} = 0", out)
        return EXIT_OK
    loops, pattern = image
    prefix = "" if loops == 0 else f"(-(q+1/q))^{loops} * "
    _emit(f"{w} Omega_{n} = {prefix}{cup_string(pattern)}\n{render_cup_pattern(pattern)}", out)
    return EXIT_OK


def cmd_spectrum(cfg: RunConfig, transfer: bool, xs: Sequence[float], unit_circle: bool) -> int:
    lines = []
    ok = True
    for N in cfg.N:
        for r in cfg.r_values(N):
            spec = spectrum_check(N, r)
            ok &= spec.max_imag < cfg.tol
            lines.append(f"N={N} r={r:.6g} max|Im|={spec.max_imag:.3e} "
                         f"max_hausdorff={max(spec.hausdorff):.3e}")
            for n, eigs in enumerate(spec.eigenvalues):
                lines.append(f"  n={n}: " + " ".join(f"{x:.10g}" for x in eigs))
            if transfer:
                points = [cmath.exp(1j * u) for u in xs] if unit_circle else list(xs)
                lines.append("  x                          eta-hermiticity  [t,H]")
                for res in transfer_checks(N, r, points):
                    x = complex(res.x)
                    lines.append(f"  {x.real:+.8f}{x.imag:+.8f}j   {res.eta_hermiticity:.3e}"
                                 f"        {res.commutes_with_H:.3e}")
    _emit("\n".join(lines), cfg.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_basis(N: int, n: int, out: Optional[str]) -> int:
    if not 0 <= n <= N:
        raise UsageError(f"sector n={n} outside 0..{N}")
    blocks = []
    for k, v in enumerate(enumerate_basis(N, n)):
        blocks.append(f"t_{k + 1}: shape=({','.join(map(str, v.tableau.shape))}) "
                      f"word={v.word} pattern={cup_string(v.cup_pattern)}\n"
                      f"{render_tableau(v.tableau)}")
    _emit("\n\n".join(blocks), out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tlmetric", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, r_default="N+1"):
        sp.add_argument("--N", required=True, help="strand count: 5, 2..8 or 2,4,6")
        sp.add_argument("--r", default=r_default,
                        help="comma-separated r values; expressions in N allowed (N+1, 2N, N+pi)")
        sp.add_argument("--tol", type=float, default=None,
                        help="tolerance (default: $TLMETRIC_TOL or 1e-9)")
        sp.add_argument("--out", help="write to this file instead of stdout")

    sp = sub.add_parser("verify", help="check every identity of the Gram-matrix construction")
    common(sp)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("gram", help="export a Gram block")
    common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--wmax", action="store_true", help="maximal-cup subspace via loop counts")
    sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = sub.add_parser("render", help="ASCII Kauffman diagram, cup pattern or Young diagram")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--word")
    sp.add_argument("--tableau", help="row lengths, e.g. 3,2")
    sp.add_argument("--n", type=int)
    sp.add_argument("--half", action="store_true", help="show the word applied to Omega_n")
    sp.add_argument("--out")

    sp = sub.add_parser("spectrum", help="eigenvalues per sector, optional transfer matrix")
    common(sp)
    sp.add_argument("--transfer", action="store_true")
    sp.add_argument("--x", default="0.3,0.7,1.5", help="spectral parameters")
    sp.add_argument("--unit-circle", action="store_true",
                    help="read --x values as angles u and use x = exp(i u)")

    sp = sub.add_parser("basis", help="list tableaux, words and cup patterns of W_n")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "render":
            return cmd_render(args.N, args.word, args.tableau, args.n, args.half, args.out)
        if args.command == "basis":
            return cmd_basis(args.N, args.n, args.out)
        tol = default_tol() if args.tol is None else args.tol
        if not tol > 0:
            raise UsageError("--tol must be positive")
        cfg = RunConfig(args.command, parse_N_list(args.N), getattr(args, "n", None),
                        args.r, tol, getattr(args, "format", "json"), args.out)
        if min(cfg.N) < 2:
            raise UsageError("N must be at least 2")
        if args.command == "verify":
            return cmd_verify(cfg, jobs=args.jobs)
        if args.command == "gram":
            return cmd_gram(cfg, wmax=args.wmax)
        if args.command == "spectrum":
            return cmd_spectrum(cfg, args.transfer, parse_floats(args.x), args.unit_circle)
    except UsageError as exc:
        print(f"tlmetric: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
