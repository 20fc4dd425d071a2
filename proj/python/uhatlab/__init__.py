"""Interpreter, transformation passes and verification harness for
unique-hard-attention sequence programs."""

try:
    from . import _uhatlab as _backend  # installed wheel layout
except ImportError:
    import _uhatlab as _backend  # in-tree build layout

Circuit = _backend.Circuit
FoFormula = _backend.FoFormula
LtlFormula = _backend.LtlFormula
Recognizer = _backend.Recognizer
UhatError = _backend.UhatError
apply_pass = _backend.apply_pass
audit_sbar = _backend.audit_sbar
builtin = _backend.builtin
builtin_names = _backend.builtin_names
builtin_oracle = _backend.builtin_oracle
check_equivalence = _backend.check_equivalence
check_fixability = _backend.check_fixability
encode_binary = _backend.encode_binary
parse_circuit = _backend.parse_circuit
parse_fo = _backend.parse_fo
parse_ltl = _backend.parse_ltl
parse_program = _backend.parse_program
pass_names = _backend.pass_names
program_from_json = _backend.program_from_json
sbar = _backend.sbar
search_unfixable = _backend.search_unfixable
verify_pass = _backend.verify_pass

__all__ = [
    "Circuit",
    "FoFormula",
    "LtlFormula",
    "Recognizer",
    "UhatError",
    "apply_pass",
    "audit_sbar",
    "builtin",
    "builtin_names",
    "builtin_oracle",
    "check_equivalence",
    "check_fixability",
    "encode_binary",
    "parse_circuit",
    "parse_fo",
    "parse_ltl",
    "parse_program",
    "pass_names",
    "program_from_json",
    "sbar",
    "search_unfixable",
    "verify_pass",
]

__version__ = "0.1.0"
