"""Command-line entry point.

Input formats (all indices 1-based):

* matrix, dense: first line ``m n``, then ``m`` lines of ``n`` tokens 0/1
* matrix, sparse: first line ``m n nnz``, then ``nnz`` lines ``row col``
* clustering: JSON ``{"clusters": [{"rows": [...], "cols": [...]}, ...]}``
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .evaluation import aggregate_ratios, build_report, rational_json, report_json
from .layout import DEMERIT_MODES, AlgorithmId
from .model import Bicluster, Biclustering, BinaryMatrix, ValidationError, compute_blocks
from .objectives import ObjectiveKind
from .postprocess import suggest, zone_layout
from .render import Palette, render_image
from .tsp import TspConfig


class InputError(Exception):
    """Bad input file; carries the location for the diagnostic line."""

    def __init__(self, path, line, message):
        self.path, self.line = str(path), line
        loc = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{loc}: {message}")


def _ints(tokens, path, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputError(path, lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def parse_matrix_text(text: str, path="<string>") -> BinaryMatrix:
    lines = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise InputError(path, None, "empty matrix file")
    hdr_line, hdr = lines[0]
    head = _ints(hdr, path, hdr_line)
    body = lines[1:]
    if len(head) == 2:
        m, n = head
        if m < 1 or n < 1:
            raise InputError(path, hdr_line, "dimensions must be positive")
        if len(body) != m:
            raise InputError(path, hdr_line, f"header says {m} rows, found {len(body)}")
        ones = set()
        for r, (lineno, toks) in enumerate(body, start=1):
            if len(toks) != n:
                raise InputError(path, lineno, f"expected {n} entries, found {len(toks)}")
            for c, tok in enumerate(toks, start=1):
                if tok == "1":
                    ones.add((r, c))
                elif tok != "0":
                    raise InputError(path, lineno, f"entry {c} is {tok!r}, expected 0 or 1")
        return BinaryMatrix(m, n, frozenset(ones))
    if len(head) == 3:
        m, n, nnz = head
        if m < 1 or n < 1 or nnz < 0:
            raise InputError(path, hdr_line, "dimensions must be positive and nnz non-negative")
        if len(body) != nnz:
            raise InputError(path, hdr_line, f"header says {nnz} entries, found {len(body)}")
        ones = set()
        for lineno, toks in body:
            if len(toks) != 2:
                raise InputError(path, lineno, "expected 'row col'")
            r, c = _ints(toks, path, lineno)
            if not (1 <= r <= m and 1 <= c <= n):
                raise InputError(path, lineno, f"entry ({r}, {c}) outside {m}x{n} (indices are 1-based)")
            if (r, c) in ones:
                raise InputError(path, lineno, f"duplicate entry ({r}, {c})")
            ones.add((r, c))
        return BinaryMatrix(m, n, frozenset(ones))
    raise InputError(path, hdr_line, "header must be 'm n' (dense) or 'm n nnz' (sparse)")


def parse_matrix(path) -> BinaryMatrix:
    return parse_matrix_text(Path(path).read_text(), path)


def parse_clustering_doc(doc, path="<json>", m: int | None = None, n: int | None = None) -> Biclustering:
    if not isinstance(doc, dict) or not isinstance(doc.get("clusters"), list):
        raise InputError(path, None, "expected an object with a 'clusters' list")
    out = []
    for i, cl in enumerate(doc["clusters"], start=1):
        if not isinstance(cl, dict) or set(cl) - {"rows", "cols"} or not {"rows", "cols"} <= set(cl):
            raise InputError(path, None, f"cluster {i}: expected exactly the keys 'rows' and 'cols'")
        for key, bound in (("rows", m), ("cols", n)):
            vals = cl[key]
            if not isinstance(vals, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in vals):
                raise InputError(path, None, f"cluster {i}: '{key}' must be a list of integers")
            if not vals:
                raise InputError(path, None, f"cluster {i}: '{key}' is empty")
            if len(set(vals)) != len(vals):
                raise InputError(path, None, f"cluster {i}: duplicate index in '{key}'")
            bad = [v for v in vals if v < 1 or (bound is not None and v > bound)]
            if bad:
                raise InputError(path, None, f"cluster {i}: index {bad[0]} out of range in '{key}' (1-based)")
        out.append(Bicluster(frozenset(cl["rows"]), frozenset(cl["cols"])))
    return Biclustering(tuple(out))


def parse_clustering(path, m: int | None = None, n: int | None = None) -> Biclustering:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(path, e.lineno, f"invalid JSON: {e.msg}") from None
    return parse_clustering_doc(doc, path, m, n)


@dataclass
class RunConfig:
    matrix_paths: list[str]
    clustering_paths: list[str]
    algorithms: list[AlgorithmId] = field(default_factory=lambda: [AlgorithmId.TSP_HEURISTIC])
    objectives: list[ObjectiveKind] = field(default_factory=lambda: list(ObjectiveKind))
    out_image: str | None = None
    out_report: str | None = None
    color_mode: str = "six"
    postprocess: bool = False
    hull: int | None = None  # 1-based cluster number
    seed: int = 0
    tsp_max_passes: int = 50
    tsp_time_ms: int = 10_000
    scale: int = 1
    demerit_insertion: str = "verbatim"
    palette_path: str | None = None


def _image_target(stem: str) -> tuple[str, str]:
    for ext in (".ppm", ".png"):
        if stem.endswith(ext):
            return stem[: -len(ext)], ext[1:]
    return stem, "ppm"


def _atomic_write(path: str, data: bytes) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(cfg: RunConfig) -> dict[str, bytes]:
    """Execute the pipeline and write outputs; returns ``{path: bytes}`` written."""
    if not cfg.out_image and not cfg.out_report:
        raise ValueError("nothing to do: give --out-image and/or --out-report")
    if len(cfg.matrix_paths) != len(cfg.clustering_paths):
        raise ValueError("--matrix and --clustering must be given the same number of times")
    palette = Palette(scale=cfg.scale)
    if cfg.palette_path:
        palette = Palette.from_json(json.loads(Path(cfg.palette_path).read_text()), cfg.scale)
    tsp_cfg = TspConfig(max_passes=cfg.tsp_max_passes, time_limit_ms=cfg.tsp_time_ms, seed=cfg.seed)

    instances = []
    for mp, cp in zip(cfg.matrix_paths, cfg.clustering_paths):
        a = parse_matrix(mp)
        instances.append((mp, cp, a, parse_clustering(cp, a.m, a.n)))

    outputs: dict[str, bytes] = {}
    reports, docs = [], []
    multi = len(instances) > 1
    for idx, (mp, cp, a, bc) in enumerate(instances):
        if cfg.hull is not None and not 1 <= cfg.hull <= bc.k:
            raise ValueError(f"--hull {cfg.hull}: clustering has {bc.k} clusters")
        decomp = compute_blocks(bc, a.m, a.n)
        report = build_report(a, bc, cfg.algorithms, seed=cfg.seed, tsp_cfg=tsp_cfg,
                              demerit_mode=cfg.demerit_insertion, kinds=cfg.objectives, decomp=decomp)
        sugg = suggest(a, bc) if cfg.postprocess else None
        if cfg.out_image:
            stem, fmt = _image_target(cfg.out_image)
            if multi:
                stem = f"{stem}.{idx + 1}"
            for alg in cfg.algorithms:
                lay = report.layouts[alg]
                if sugg is not None:
                    lay = zone_layout(lay, sugg, decomp, bc)
                hull = None if cfg.hull is None else cfg.hull - 1
                outputs[f"{stem}.{alg.value}.{fmt}"] = render_image(
                    a, lay, bc, sugg, palette, cfg.color_mode, fmt, hull)
        instance = {"matrix": mp, "clustering": cp, "m": a.m, "n": a.n, "k": bc.k,
                    "rowBlocks": decomp.s, "colBlocks": decomp.t}
        reports.append(report)
        docs.append(report_json(report, instance, sugg.to_json() if sugg else None))

    if cfg.out_report:
        if multi:
            agg = aggregate_ratios(reports)
            doc = {
                "instances": docs,
                "aggregate": {
                    alg.value: {
                        k.value: {
                            "mean": rational_json(agg[(alg, k)]["mean"]),
                            "variance": rational_json(agg[(alg, k)]["variance"]),
                            "count": agg[(alg, k)]["count"],
                        }
                        for k in cfg.objectives
                    }
                    for alg in cfg.algorithms
                },
            }
        else:
            doc = docs[0]
        outputs[cfg.out_report] = (json.dumps(doc, indent=2) + "\n").encode()

    for path, data in outputs.items():
        _atomic_write(path, data)
    return outputs


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bicvis",
        description="Lay out, score and render an overlapping biclustering of a binary matrix.",
        epilog="All row, column and cluster indices in files and flags are 1-based.",
    )
    p.add_argument("--matrix", action="append", required=True, help="matrix file (dense or sparse text)")
    p.add_argument("--clustering", action="append", required=True, help="clustering JSON file")
    p.add_argument("--algorithm", action="append", default=None,
                   help="algorithm id (repeatable) or 'all'; default TspHeuristic. "
                        f"Choices: {', '.join(a.value for a in AlgorithmId)}")
    p.add_argument("--objective", action="append", default=None,
                   help=f"objective to report (repeatable); default all of {', '.join(k.value for k in ObjectiveKind)}")
    p.add_argument("--out-image", help="image stem; writes <stem>.<algorithm>.ppm (or .png if the stem ends in .png)")
    p.add_argument("--out-report", help="JSON score report path")
    p.add_argument("--color-mode", default="six-color", choices=["two-color", "six-color", "two", "six"])
    p.add_argument("--postprocess", action="store_true", help="suggest near-miss rows/columns and zone the layout")
    p.add_argument("--hull", type=int, help="outline the bounding rectangle of this cluster (1-based)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tsp-max-passes", type=int, default=50)
    p.add_argument("--tsp-time-ms", type=int, default=10_000)
    p.add_argument("--scale", type=int, default=1, help="pixels per matrix cell")
    p.add_argument("--demerit-insertion", choices=DEMERIT_MODES, default="verbatim")
    p.add_argument("--palette", help="JSON palette override")
    return p


def config_from_args(ns) -> RunConfig:
    if ns.algorithm is None:
        algs = [AlgorithmId.TSP_HEURISTIC]
    elif any(a.lower() == "all" for a in ns.algorithm):
        algs = list(AlgorithmId)
    else:
        algs = []
        for name in ns.algorithm:
            alg = AlgorithmId.parse(name)
            if alg not in algs:
                algs.append(alg)
    kinds = list(ObjectiveKind) if ns.objective is None else [ObjectiveKind(o) for o in ns.objective]
    return RunConfig(
        matrix_paths=ns.matrix, clustering_paths=ns.clustering, algorithms=algs, objectives=kinds,
        out_image=ns.out_image, out_report=ns.out_report, color_mode=ns.color_mode.split("-")[0],
        postprocess=ns.postprocess, hull=ns.hull, seed=ns.seed, tsp_max_passes=ns.tsp_max_passes,
        tsp_time_ms=ns.tsp_time_ms, scale=ns.scale, demerit_insertion=ns.demerit_insertion,
        palette_path=ns.palette,
    )


def _fail(kind: str, msg: str, code: int) -> int:
    print(f"bicvis: error[{kind}]: {msg}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        run(cfg)
    except InputError as e:
        return _fail("input", str(e), 2)
    except FileNotFoundError as e:
        return _fail("io", f"{e.filename}: no such file", 2)
    except OSError as e:
        return _fail("io", f"{getattr(e, 'filename', '') or ''}: {e.strerror or e}", 1)
    except (ValidationError, ValueError) as e:
        return _fail("config", " ".join(str(e).split()), 2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
