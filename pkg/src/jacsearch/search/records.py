"""Search configuration (key=value files) and JSONL result records."""

import hashlib
import json
import os
from dataclasses import dataclass, field, fields, replace

from scipy import stats

from ..zeta.security import DEFAULT_EFFORT, LABELS
from .family import format_family, parse_family
from .tuning import weil_bits

STATUSES = ("rejected-filter", "b-hard", "success", "error")

# keys that change what a record contains; everything else is scheduling
_HASHED = ("genus", "p", "k", "family", "u", "B", "odd_only", "smith", "targets",
           "threshold", "effort", "c", "seed")


def _bool(text):
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _int(text):
    # allows 2^50-27 style prime expressions
    t = str(text).replace(" ", "")
    if t.lstrip("-").isdigit():
        return int(t)
    total = 0
    for sign, part in _signed_parts(t):
        if "^" in part:
            b, e = part.split("^")
            total += sign * int(b) ** int(e)
        elif "*" in part:
            a, b = part.split("*")
            total += sign * int(a) * int(b)
        else:
            total += sign * int(part)
    return total


def _signed_parts(t):
    out = []
    sign = 1
    cur = ""
    for ch in t:
        if ch in "+-" and cur:
            out.append((sign, cur))
            cur = ""
            sign = 1 if ch == "+" else -1
        elif ch in "+-":
            sign = 1 if ch == "+" else -1
        else:
            cur += ch
    if not cur:
        raise ValueError(f"not an integer expression: {t!r}")
    out.append((sign, cur))
    return out


def _targets(text):
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        items = [x.strip() for x in str(text).split(",") if x.strip()]
    for x in items:
        if x not in LABELS:
            raise ValueError(f"unknown target {x!r}; choose from {', '.join(LABELS)}")
    return tuple(items)


def _opt_float(text):
    return None if text in (None, "", "none", "None") else float(text)


def _opt_int(text):
    return None if text in (None, "", "none", "None") else _int(text)


def _opt_str(text):
    return None if text in (None, "", "none", "None") else str(text)


_PARSERS = {
    "genus": _opt_int, "p": _int, "k": int, "family": str, "t_from": int, "t_to": int,
    "u": _opt_float, "B": _opt_int, "odd_only": _bool, "smith": _bool, "targets": _targets,
    "threshold": float, "effort": _int, "c": int, "workers": int, "batch": int,
    "seed": int, "out": _opt_str, "resume": _bool,
}


@dataclass(frozen=True)
class SearchConfig:
    p: int
    family: str
    t_from: int = 0
    t_to: int = -1  # inclusive; t_to < t_from is an empty range
    genus: int = None
    k: int = 1
    u: float = None
    B: int = None
    odd_only: bool = False
    smith: bool = True
    targets: tuple = ("J",)
    threshold: float = 0.95
    effort: int = DEFAULT_EFFORT
    c: int = 6
    workers: int = 1
    batch: int = 1
    seed: int = 0
    out: str = None
    resume: bool = False
    _family: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        fam = parse_family(self.family)
        object.__setattr__(self, "_family", fam)
        object.__setattr__(self, "family", format_family(fam))
        object.__setattr__(self, "targets", _targets(self.targets))
        if self.genus is None:
            object.__setattr__(self, "genus", fam.genus)
        elif self.genus != fam.genus:
            raise ValueError(f"family has genus {fam.genus}, config says {self.genus}")
        if self.k != 1 and self.k not in (2, 3):
            raise ValueError("k must be 1, 2 or 3")
        if self.u is None and self.B is None:
            raise ValueError("give u or B")
        if self.B is not None and self.B < 2:
            raise ValueError("B must be at least 2")
        if self.u is not None and self.u <= 1:
            raise ValueError("u must exceed 1")
        if self.c < 2:
            raise ValueError("c must be at least 2")
        if self.workers < 1 or self.batch < 1:
            raise ValueError("workers and batch must be positive")

    # derived values -------------------------------------------------------
    @property
    def fam(self):
        return self._family

    @property
    def q(self):
        return self.p ** self.k

    @property
    def n(self):
        return weil_bits(self.q, self.genus)

    @property
    def bound(self):
        """B, explicit or 2^(n/u)."""
        if self.B is not None:
            return int(self.B)
        return round(2 ** (self.n / self.u))

    @property
    def search_twist(self):
        """Search J(C~) when J(C) itself is wanted, else J(C)."""
        return "J" in self.targets

    @property
    def t_values(self):
        return range(self.t_from, self.t_to + 1)

    # serialisation --------------------------------------------------------
    def as_dict(self):
        out = {}
        for f in fields(self):
            if f.name.startswith("_"):
                continue
            v = getattr(self, f.name)
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out

    def resolved(self):
        """Every setting plus the derived n and B, for printing."""
        d = self.as_dict()
        d["n"] = self.n
        d["bound"] = self.bound
        d["search"] = "J_twist" if self.search_twist else "J"
        d["config_hash"] = self.config_hash
        return d

    def to_text(self):
        lines = []
        for key, v in self.as_dict().items():
            if v is None:
                v = "none"
            elif isinstance(v, list):
                v = ",".join(v)
            elif isinstance(v, bool):
                v = "true" if v else "false"
            lines.append(f"{key} = {v}")
        return "\n".join(lines) + "\n"

    @property
    def config_hash(self):
        d = self.as_dict()
        key = {k: d[k] for k in _HASHED}
        key["p"] = str(key["p"])
        key["B"] = str(self.bound)
        blob = json.dumps(key, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def with_range(self, t_from, t_to, **kw):
        return replace(self, t_from=t_from, t_to=t_to, **kw)


def parse_config_text(text):
    """key = value lines; '#' starts a comment; returns a dict of typed values."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _PARSERS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        try:
            out[key] = _PARSERS[key](value)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    return out


def coerce(key, value):
    key = key.replace("-", "_")
    if key not in _PARSERS:
        raise ValueError(f"unknown key {key!r}")
    return _PARSERS[key](value)


def load_config(path=None, overrides=None):
    values = {}
    if path:
        with open(path, encoding="utf-8") as fh:
            values.update(parse_config_text(fh.read()))
    for k, v in (overrides or {}).items():
        if v is not None:
            values[k] = v
    return config_from_dict(values)


def config_from_dict(values):
    missing = [k for k in ("p", "family") if k not in values]
    if missing:
        raise ValueError(f"missing required setting(s): {', '.join(missing)}")
    return SearchConfig(**values)


def config_from_text(text):
    return config_from_dict(parse_config_text(text))


# records ---------------------------------------------------------------------

@dataclass
class SearchRecord:
    t: int
    p: int
    k: int
    genus: int
    f: list
    status: str
    config_hash: str
    lam: int = None
    order: int = None
    lpoly: object = None
    derived: list = field(default_factory=list)
    security: list = field(default_factory=list)
    ops: dict = field(default_factory=lambda: {"exp": 0, "search": 0, "recovery": 0})
    ms: float = 0.0
    detail: str = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_json(self):
        return {
            "t": self.t,
            "p": str(self.p),
            "k": self.k,
            "genus": self.genus,
            "f": [str(c) for c in self.f],
            "status": self.status,
            "lambda": None if self.lam is None else str(self.lam),
            "order": None if self.order is None else str(self.order),
            "lpoly": None if self.lpoly is None else self.lpoly.to_json(),
            "derived": [d.to_json() if hasattr(d, "to_json") else d for d in self.derived],
            "security": list(self.security),
            "ops": {k: int(self.ops.get(k, 0)) for k in ("exp", "search", "recovery")},
            "ms": round(self.ms, 3),
            "config_hash": self.config_hash,
            "detail": self.detail,
        }

    def to_line(self):
        return json.dumps(self.to_json(), separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, obj):
        from ..zeta.lpoly import LPolynomial
        return cls(
            t=int(obj["t"]), p=int(obj["p"]), k=int(obj["k"]), genus=int(obj["genus"]),
            f=[int(c) for c in obj["f"]], status=obj["status"],
            config_hash=obj["config_hash"],
            lam=None if obj.get("lambda") is None else int(obj["lambda"]),
            order=None if obj.get("order") is None else int(obj["order"]),
            lpoly=None if obj.get("lpoly") is None else LPolynomial.from_json(obj["lpoly"]),
            derived=list(obj.get("derived", [])), security=list(obj.get("security", [])),
            ops=dict(obj.get("ops", {})), ms=float(obj.get("ms", 0.0)),
            detail=obj.get("detail"))


def stable_view(obj):
    """A record's JSON without its timing field (for reproducibility checks)."""
    d = dict(obj)
    d.pop("ms", None)
    return d


def read_records(path):
    """Complete records in a JSONL file; a torn final line is ignored."""
    out = []
    if not path or not os.path.exists(path):
        return out
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.endswith("\n"):
                break
            line = line.strip()
            if not line:
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError:
                break
    return out


def done_t_values(path, config_hash):
    return {int(r["t"]) for r in read_records(path) if r.get("config_hash") == config_hash}


def truncate_torn_tail(path):
    """Drop a partial last line left by a killed writer."""
    if not path or not os.path.exists(path):
        return
    with open(path, "rb+") as fh:
        data = fh.read()
        if data and not data.endswith(b"\n"):
            cut = data.rfind(b"\n") + 1
            fh.truncate(cut)


def wilson_interval(k, n, confidence=0.95):
    """Wilson score interval for a binomial proportion."""
    if n == 0:
        return 0.0, 1.0
    ci = stats.binomtest(int(k), int(n)).proportion_ci(confidence, method="wilson")
    return float(ci.low), float(ci.high)
