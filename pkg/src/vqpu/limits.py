"""Engine-wide size limits."""

# 26 qubits keeps a full binary64 amplitude array close to 1 GiB.
DEFAULT_MAX_QUBITS = 26

# Dense-matrix oracle cap: 2^8 x 2^8 complex is the largest brute-force
# product worth building for cross-checks.
ORACLE_MAX_QUBITS = 8
