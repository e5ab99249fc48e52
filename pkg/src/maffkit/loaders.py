import json
from pathlib import Path

from maffkit.codec import parse_homomorphism, parse_matrix, parse_quotient
from maffkit.errors import ParseError


def _reject_constant(name):
    raise ParseError("Non-finite JSON constant %s" % name)


def load_json(path, log):
    path = Path(path)
    log.debug("Reading JSON: %s", path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError("Cannot read %s: %s" % (path, str(e)))
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except ValueError as e:
        raise ParseError("Invalid JSON in %s: %s" % (path, str(e)))


def load_matrix(path, log):
    return parse_matrix(load_json(path, log))


def load_quotient(path, log):
    t = parse_quotient(load_json(path, log))
    log.info("Loaded quotient on C^%d from %s", t.n, Path(path).name)
    return t


def load_homomorphism(path, log):
    phi = parse_homomorphism(load_json(path, log))
    log.info("Loaded homomorphism C^%d -> C^%d from %s", phi.source.dim, phi.target.dim, Path(path).name)
    return phi
