import pytest

from forcing_lab import build_forcing_sequence, parse_group_spec

_groups = {}
_certs = {}


@pytest.fixture(scope="session")
def group_of():
    """Session-cached spec -> group builder; specs are pure so reuse is safe."""

    def build(spec, cap=2048):
        key = (spec, cap)
        if key not in _groups:
            _groups[key] = parse_group_spec(spec, cap=cap)
        return _groups[key]

    return build


@pytest.fixture(scope="session")
def cert_of(group_of):
    """Session-cached certificate builder (builder is deterministic)."""

    def build(spec):
        if spec not in _certs:
            _certs[spec] = build_forcing_sequence(group_of(spec))
        return _certs[spec]

    return build
