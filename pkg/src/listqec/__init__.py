"""List-decodable quantum codes: finite fields, classical and CSS codes,
AEL distance amplification, approximate QECC from purity testing, and
simulation tooling."""

__version__ = "0.1.0"
