"""Builders for the five example algebras and their ModelSpec description."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .action import ActionRow, GeneratorActionTable, e_label, f_label, h_label
from .algebra import (
    Q,
    AlgebraError, Alphabet, BorcherdsCartanMatrix, Generator, RootVector, validate_bcm,
)
from .kacmoody import GCM, HighestWeightModule, _height
from .qseries import gnome_simple_multiplicities, j_coefficients

SCHEMA_VERSION = 1


class ModelError(AlgebraError):
    pass


@dataclass
class ModelSpec:
    kind: str
    caps: dict
    alphabet: Alphabet
    bcm: BorcherdsCartanMatrix
    table: GeneratorActionTable
    provenance: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    @property
    def truncation(self) -> int:
        return int(self.caps["trunc"])

    @property
    def model_id(self) -> str:
        caps = ",".join(f"{k}={self.caps[k]}" for k in sorted(self.caps))
        return f"{self.kind}({caps})"

    def generator(self, label: str) -> Generator:
        return self.alphabet.by_label(label)

    def block_dims(self) -> dict[str, int]:
        """Number of materialized generators per imaginary simple root index."""
        out: dict[str, int] = {}
        for g in self.alphabet:
            idx = self.params["family_of"][g.id]
            out[idx] = out.get(idx, 0) + 1
        return out

    def exact_module(self, family: str) -> HighestWeightModule:
        """Untruncated module for a family of H3/E10 generators (lazy, exact)."""
        fam = self.params["families"][family]
        gcm = GCM.from_json(self.params["gcm"])
        cache = self.__dict__.setdefault("_modules", {})
        key = tuple(fam["lambda"])
        if key not in cache:
            cache[key] = HighestWeightModule(gcm, fam["lambda"])
        return cache[key]

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "model": self.model_id,
            "caps": dict(self.caps),
            "alphabet": self.alphabet.to_json(),
            "bcm": self.bcm.to_json(),
            "table": self.table.to_json(),
            "provenance": self.provenance,
            "params": self.params,
        }

    @classmethod
    def from_json(cls, d: dict) -> "ModelSpec":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ModelError(f"unsupported schema_version {d.get('schema_version')!r}")
        alphabet = Alphabet.from_json(d["alphabet"])
        params = d.get("params", {})
        if "family_of" in params:
            params = dict(params)
            params["family_of"] = [str(x) for x in params["family_of"]]
        return cls(
            d["kind"], dict(d["caps"]), alphabet,
            BorcherdsCartanMatrix.from_json(d["bcm"]),
            GeneratorActionTable.from_json(alphabet, d["table"]),
            d.get("provenance", {}), params,
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def load_model(path: str | Path) -> ModelSpec:
    return ModelSpec.from_json(json.loads(Path(path).read_text()))


# --- sl2-block models (Monster, Fricke, gnome) ------------------------------

def _sl2_model(kind, blocks, bcm, caps, provenance, params) -> ModelSpec:
    """``blocks``: list of (index, top weight m, label(l) -> str).

    Each block is the (m+1)-dimensional sl2 module v_0, ..., v_m with
    f v_l = v_{l+1}, e v_l = l(m-l+1) v_{l-1}, h v_l = (m-2l) v_l and
    degree(v_l) = -l α_{-1} - α_index.
    """
    gens, family_of = [], []
    e_img, f_img, h_img = {}, {}, {}
    for index, m, label in blocks:
        first = len(gens)
        for l in range(m + 1):
            gid = len(gens)
            gens.append(Generator(gid, label(l), RootVector({"-1": -l, index: -1}),
                                  {h_label("-1"): Q(m - 2 * l)}))
            family_of.append(index)
            h_img[gid] = {gid: Q(m - 2 * l)}
            if l < m:
                f_img[gid] = {gid + 1: Q(1)}
            if l > 0:
                e_img[gid] = {gid - 1: Q(l * (m - l + 1))}
        assert len(gens) - first == m + 1
    alphabet = Alphabet(gens)
    table = GeneratorActionTable(
        alphabet, ["-1"], {("-1", "-1"): 2},
        [ActionRow(e_label("-1"), "e", "-1", e_img),
         ActionRow(f_label("-1"), "f", "-1", f_img),
         ActionRow(h_label("-1"), "h", "-1", h_img)])
    params = dict(params, family_of=family_of)
    spec = ModelSpec(kind, caps, alphabet, bcm, table, provenance, params)
    _check_model(spec)
    return spec


def _check_model(spec: ModelSpec) -> None:
    rep = validate_bcm(spec.bcm)
    if not rep.ok:
        raise ModelError(f"{spec.kind}: Borcherds matrix window fails {rep.violations[:3]}")
    from .action import check_commutation
    bad = check_commutation(spec.table)
    if bad:
        raise ModelError(f"{spec.kind}: action table violates {bad[:3]}")


def monster_index(j: int, k: int) -> str:
    return f"{j},{k}"


def build_monster(max_block: int = 3, kcap: int = 2, trunc: int = 4) -> ModelSpec:
    """Monster Lie algebra window: blocks f_{l,jk}, 0 <= l < j, of sl2-dimension j."""
    if max_block < 1 or kcap < 1 or trunc < 1:
        raise ModelError("max_block, kcap and trunc must be >= 1")
    c = j_coefficients(max_block)
    blocks, index = [], ["-1"]
    true_mult = {}
    for j in range(1, max_block + 1):
        cj = c[j + 1]
        true_mult[str(j)] = cj
        for k in range(1, min(cj, kcap) + 1):
            idx = monster_index(j, k)
            index.append(idx)
            blocks.append((idx, j - 1, lambda l, j=j, k=k: f"f[l={l},j={j},k={k}]"))
    bcm = BorcherdsCartanMatrix(index, {(a, b): _monster_entry(a, b)
                                        for a in index for b in index})
    caps = {"maxBlock": max_block, "kcap": kcap, "trunc": trunc}
    prov = {"source": "Monster Lie algebra, imaginary blocks sized by c(j)",
            "true_block_multiplicity": true_mult}
    return _sl2_model("monster", blocks, bcm, caps, prov, {})


def _block_j(idx: str) -> int:
    return int(idx.split(",")[0])


def _monster_entry(a: str, b: str) -> int:
    """a(-1,-1) = 2, a(-1,jk) = 1 - j, a(jk,pq) = -(j+p)."""
    if a == b == "-1":
        return 2
    if "-1" in (a, b):
        return 1 - _block_j(b if a == "-1" else a)
    return -(_block_j(a) + _block_j(b))


# --- Fricke ------------------------------------------------------------------

class CoefficientTable:
    """Coefficients c_g(1, n/N) keyed by the integer numerator n."""

    def __init__(self, N: int, coeffs: Mapping[int, int]):
        if N < 1:
            raise ModelError("N must be >= 1")
        self.N = N
        self.coeffs = {int(n): int(c) for n, c in coeffs.items()}
        if self.coeffs.get(-1) != 1:
            raise ModelError(f"coefficient table must have c(-1/{N}) = 1")
        neg = [n for n, c in self.coeffs.items() if n > 0 and c < 0]
        if neg:
            raise ModelError(f"negative coefficients at n = {neg}")

    def c(self, n: int) -> int:
        return self.coeffs.get(n, 0)

    @classmethod
    def parse_key(cls, key: str, N: int) -> int:
        key = key.strip().replace("N", str(N))
        if "/" in key:
            num, den = key.split("/")
            num, den = int(num), int(den)
        else:
            num, den = int(key), 1
        if (num * N) % den:
            raise ModelError(f"exponent {key} is not a multiple of 1/{N}")
        return num * N // den

    @classmethod
    def from_json(cls, d: dict) -> "CoefficientTable":
        try:
            N = int(d["N"])
            return cls(N, {cls.parse_key(k, N): int(v) for k, v in d["coeffs"].items()})
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelError(f"malformed coefficient table: {exc}") from None

    @classmethod
    def from_csv(cls, text: str, N: int) -> "CoefficientTable":
        coeffs = {}
        for row in csv.reader(io.StringIO(text)):
            if not row or row[0].strip().startswith("#"):
                continue
            if row[0].strip().lower() in ("exponent", "n"):
                continue
            if len(row) != 2:
                raise ModelError(f"CSV row {row!r} must be exponent,coefficient")
            coeffs[cls.parse_key(row[0], N)] = int(row[1])
        return cls(N, coeffs)

    @classmethod
    def load(cls, path: str | Path, N: int | None = None) -> "CoefficientTable":
        path = Path(path)
        text = path.read_text()
        if path.suffix.lower() == ".csv":
            if N is None:
                raise ModelError("CSV tables need N")
            return cls.from_csv(text, N)
        t = cls.from_json(json.loads(text))
        if N is not None and t.N != N:
            raise ModelError(f"table has N = {t.N}, expected {N}")
        return t

    @classmethod
    def identity(cls, nmax: int) -> "CoefficientTable":
        c = j_coefficients(nmax)
        return cls(1, {n: c[n + 1] for n in range(-1, nmax + 1)})

    def to_json(self) -> dict:
        return {"N": self.N, "coeffs": {f"{n}/{self.N}": c for n, c in sorted(self.coeffs.items())}}


def build_fricke(N: int, table: CoefficientTable, max_block: int = 3, kcap: int = 2,
                 trunc: int = 4) -> ModelSpec:
    """Fricke-type algebra: blocks (f_{-1})^l f_{jk}, 0 <= l <= j, of dimension j+1."""
    if table is None:
        raise ModelError("build_fricke needs a coefficient table")
    if table.N != N:
        raise ModelError(f"table has N = {table.N}, expected {N}")
    if max_block < 1 or kcap < 1 or trunc < 1:
        raise ModelError("max_block, kcap and trunc must be >= 1")
    blocks, index = [], ["-1"]
    true_mult = {}
    for j in range(1, max_block + 1):
        cj = table.c(j)
        true_mult[str(j)] = cj
        for k in range(1, min(cj, kcap) + 1):
            idx = monster_index(j, k)
            index.append(idx)
            blocks.append((idx, j, lambda l, j=j, k=k: f"f[l={l},j={j},k={k}]"))
    entries = {}
    for a in index:
        for b in index:
            if a == b == "-1":
                entries[(a, b)] = 2
            elif "-1" in (a, b):
                entries[(a, b)] = -_block_j(b if a == "-1" else a)
            else:
                entries[(a, b)] = -(_block_j(a) + _block_j(b))
    bcm = BorcherdsCartanMatrix(index, entries)
    caps = {"maxBlock": max_block, "kcap": kcap, "trunc": trunc, "N": N}
    prov = {"source": f"Fricke-type algebra for N = {N} from a user coefficient table",
            "true_block_multiplicity": true_mult, "table": table.to_json()}
    return _sl2_model("fricke", blocks, bcm, caps, prov, {"N": N})


# --- gnome -------------------------------------------------------------------

def gnome_index(l: int, n: int, k: int) -> str:
    return f"<{l},{n}>#{k}"


def build_gnome(lmax: int = 2, nmax: int = 3, kcap: int = 1, trunc: int = 4) -> ModelSpec:
    """Gnome Lie algebra window: m_α copies of the sl2 module of f_{-α}, α = <l,n>."""
    if lmax < 1 or nmax < 1 or kcap < 1 or trunc < 1:
        raise ModelError("lmax, nmax, kcap and trunc must be >= 1")
    mults = gnome_simple_multiplicities(lmax + nmax)
    blocks, index, roots = [], ["-1"], {}
    imaginary = []
    for l in range(1, lmax + 1):
        for n in range(l, nmax + 1):
            m = mults[(l, n)]
            imaginary.append({"root": [l, n], "m": m})
            for k in range(1, min(m, kcap) + 1):
                idx = gnome_index(l, n, k)
                index.append(idx)
                roots[idx] = (l, n)
                blocks.append((idx, n - l, lambda t, l=l, n=n, k=k: f"f[t={t},<{l},{n}>,k={k}]"))

    def lc(a, b):
        (l1, n1), (l2, n2) = a, b
        return -l1 * n2 - l2 * n1

    vec = dict(roots, **{"-1": (1, -1)})
    bcm = BorcherdsCartanMatrix(index, {(a, b): lc(vec[a], vec[b]) for a in index for b in index})
    caps = {"lmax": lmax, "nmax": nmax, "kcap": kcap, "trunc": trunc}
    prov = {"source": "gnome Lie algebra; m_alpha from the free-part denominator expansion",
            "imaginary_simple_roots": imaginary,
            "convention": "light-cone <l,n>, root multiplicity p(1+ln) - p(ln)"}
    return _sl2_model("gnome", blocks, bcm, caps, prov, {})


# --- Monster root sets ----------------------------------------------------------

def monster_root_sets(l: int, j: int, k: int, amax: int, bmax: int,
                      include_zero: bool = True) -> tuple[set, set]:
    """R'(l,j,k) and S'(l,j,k) enumerated for a, b within the given bounds."""
    lo = 0 if include_zero else 1
    idx = monster_index(j, k)
    R, S = set(), set()
    for a in range(lo, amax + 1):
        for b in range(lo, bmax + 1):
            if a - b * l < j:
                r = RootVector({"-1": a - b * l, idx: -b})
                if r:
                    R.add(r)
            if a + b * l < j:
                s = RootVector({"-1": -(a + b * l), idx: -b})
                if s:
                    S.add(s)
    return R, S


# --- Kac–Moody module models (H3, E10) ----------------------------------------

def _content_str(c) -> str:
    return ",".join(str(x) for x in c)


def _module_model(kind, gcm: GCM, families, depth, bcm, caps, provenance) -> ModelSpec:
    """``families``: list of (index, λ tuple, copies).

    Generators are the quotient basis vectors of depth <= ``depth`` of each
    copy of L(λ); f-rows into depth + 1 are dropped (truncated window).
    """
    labels = gcm.labels
    gens, family_of, vectors = [], [], []
    rows = {lab: {} for lab in
            [e_label(i) for i in labels] + [f_label(i) for i in labels] + [h_label(i) for i in labels]}
    interior = []
    fam_params = {}
    for index, lam, copies in families:
        M = HighestWeightModule(gcm, lam)
        contents = M.contents(depth)
        fam_params[index] = {"lambda": list(lam), "copies": copies}
        for k in range(1, copies + 1):
            ids = {}
            for c in contents:
                mu = M.weight(c)
                for b in range(M.dim(c)):
                    gid = len(gens)
                    ids[(c, b)] = gid
                    deg = RootVector({index: -1}) + RootVector({l: -x for l, x in zip(labels, c)})
                    suffix = f"#{k}" if copies > 1 else ""
                    gens.append(Generator(gid, f"v[{index}{suffix}|{_content_str(c)}|{b}]", deg,
                                          {h_label(l): Q(mu[i]) for i, l in enumerate(labels)}))
                    family_of.append(index)
                    vectors.append([index, k, list(c), b])
                    if _height(c) < depth:
                        interior.append(gid)
            for (c, b), gid in ids.items():
                for i, l in enumerate(labels):
                    mu = M.weight(c)
                    if mu[i]:
                        rows[h_label(l)][gid] = {gid: Q(mu[i])}
                    for kind_, lab in (("e", e_label(l)), ("f", f_label(l))):
                        img = M.apply(kind_, i, {(c, b): Q(1)}) if (kind_ == "e" or _height(c) < depth) else {}
                        out = {ids[key]: x for key, x in img.items() if key in ids}
                        if len(out) != len(img):
                            raise ModelError("module image left the materialized window")
                        if out:
                            rows[lab][gid] = out
    alphabet = Alphabet(gens)
    cartan = {(a, b): gcm.a(a, b) for a in labels for b in labels}
    arows = []
    for l in labels:
        arows.append(ActionRow(e_label(l), "e", l, rows[e_label(l)]))
        arows.append(ActionRow(f_label(l), "f", l, rows[f_label(l)]))
        arows.append(ActionRow(h_label(l), "h", l, rows[h_label(l)]))
    table = GeneratorActionTable(alphabet, labels, cartan, arows, interior)
    params = {"gcm": gcm.to_json(), "families": fam_params, "family_of": family_of,
              "vectors": vectors, "depth": depth}
    spec = ModelSpec(kind, caps, alphabet, bcm, table, provenance, params)
    _check_model(spec)
    return spec


H3_GCM = GCM(["1", "2"], [[2, -3], [-3, 2]])
H3_B = [[2, -3, -1], [-3, 2, -1], [-1, -1, -2]]


def build_h3(depth: int = 3, trunc: int = 4, copies: int = 1) -> ModelSpec:
    """H(3) with one adjoined imaginary root α3: V' = L(λ), λ(h1) = λ(h2) = 1.

    ``copies`` > 1 materializes several isomorphic copies of L(λ) (an
    imaginary simple root of higher multiplicity), used for basis changes.
    """
    if depth < 0 or trunc < 1 or copies < 1:
        raise ModelError("depth must be >= 0, trunc and copies >= 1")
    bcm = BorcherdsCartanMatrix(["1", "2", "3"], H3_B)
    lam = tuple(-int(bcm[i, "3"]) for i in ("1", "2"))
    caps = {"d": depth, "H": depth + 1, "trunc": trunc}
    if copies > 1:
        caps["copies"] = copies
    prov = {"source": "H(3) with one adjoined imaginary simple root",
            "highest_weight": {"h_{1}": lam[0], "h_{2}": lam[1]}}
    return _module_model("h3", H3_GCM, [("3", lam, copies)], depth, bcm, caps, prov)


E10_LABELS = ["-1", "0", "1", "2", "3", "4", "5", "6", "7", "8"]
# chain 7-6-5-4-3-2-1-0-(-1), node 8 attached to 5
E10_EDGES = [("7", "6"), ("6", "5"), ("5", "4"), ("4", "3"), ("3", "2"), ("2", "1"),
             ("1", "0"), ("0", "-1"), ("5", "8")]
E10_DELTA = {"0": 1, "1": 2, "2": 3, "3": 4, "4": 5, "5": 6, "6": 4, "7": 2, "8": 3}


def e10_gcm() -> GCM:
    pos = {l: i for i, l in enumerate(E10_LABELS)}
    rows = [[2 if i == j else 0 for j in range(10)] for i in range(10)]
    for a, b in E10_EDGES:
        rows[pos[a]][pos[b]] = rows[pos[b]][pos[a]] = -1
    return GCM(E10_LABELS, rows)


def e10_lambda(k: int) -> dict[str, int]:
    """λ_k = α_{-1} + (2+k)δ as a vector of simple-root coefficients."""
    v = {l: (2 + k) * c for l, c in E10_DELTA.items()}
    v["-1"] = 1
    return v


def e10_pair(gcm: GCM, x: Mapping[str, int], y: Mapping[str, int]) -> int:
    return sum(a * gcm.a(i, j) * b for i, a in x.items() for j, b in y.items())


def build_e10(kmax: int = 1, depth: int = 2, trunc: int = 3, copies: int = 1) -> ModelSpec:
    """E10 with imaginary simple roots λ_k, k <= kmax, ``copies`` materialized copies each."""
    if kmax < 0 or depth < 0 or trunc < 1 or copies < 1:
        raise ModelError("kmax, depth must be >= 0, trunc and copies >= 1")
    gcm = e10_gcm()
    imag = [f"L{k}" for k in range(kmax + 1)]
    index = E10_LABELS + imag
    vec = {l: {l: 1} for l in E10_LABELS}
    for k in range(kmax + 1):
        vec[f"L{k}"] = e10_lambda(k)
    bcm = BorcherdsCartanMatrix(index, {(a, b): e10_pair(gcm, vec[a], vec[b])
                                        for a in index for b in index})
    families = []
    for k in range(kmax + 1):
        lam = tuple(-int(bcm[l, f"L{k}"]) for l in E10_LABELS)
        families.append((f"L{k}", lam, copies))
    caps = {"kmax": kmax, "d": depth, "trunc": trunc}
    if copies > 1:
        caps["copies"] = copies
    prov = {"source": "E10 with adjoined imaginary simple roots λ_k = α_{-1} + (2+k)δ",
            "true_multiplicity": f"unknown; {copies} copy(ies) materialized per λ_k",
            "delta": E10_DELTA}
    return _module_model("e10", gcm, families, depth, bcm, caps, prov)


BUILDERS = {
    "monster": build_monster,
    "fricke": build_fricke,
    "h3": build_h3,
    "e10": build_e10,
    "gnome": build_gnome,
}
