"""Compile qubit circuits to photonic mesh programs and simulate them.

The compiler maps an n-qubit circuit onto ``3n`` waveguides (one aux + two
rails per qubit), emitting MZI layers gate by gate.  Two-qubit gates act on
adjacent qubit triplets; non-adjacent operands are routed together with
``SWAP2`` networks and routed back afterwards.

``SWAP2`` exchanges two adjacent qubits' rail photons but crosses each
qubit's rails in the process, so every routed photon comes out with its
rails flipped.  Rather than spending extra crossings to undo this, the
compiler tracks a waveguide relabeling per logical qubit: ``positions[q]``
is the triplet currently holding qubit ``q`` and ``flips[q]`` records
whether its rails are exchanged.  Rail flips on the operands of an
entangling gate are discharged with an explicit X block beforehand
(a flipped target of a plain SWAP or CNOT would otherwise change the
gate); the final relabeling is applied when decoding measurement
amplitudes.

Every post-selected gate is followed by truncation of the two auxiliary
modes it used.  A pair of qubits may share at most one post-selected gate:
a second one would post-select on photons that are no longer in the
product-form the gate's success accounting assumes, so the compiler
refuses it (:class:`IllegalCascade`) unless explicitly overridden.

Distinct pairs always compile, but exactness has a sharper boundary.  Each
post-selected gate leaves failure terms in which one operand's rail pair
is doubly occupied and the other's is empty; truncation removes the aux
photons but keeps those terms, relying on the final one-photon-per-pair
projection to discard them.  That works whenever the gates' interaction
graph over photons (qubit pairs, tracked through any logical SWAPs) is a
forest.  If a gate closes a cycle, correlated doubled/empty terms from
earlier gates can meet inside its six-mode window and rebalance into a
configuration that passes projection, so the decoded state and success
probability deviate from the ideal circuit.  The simulator reports that
outcome faithfully rather than rejecting such circuits.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import fock, gates
from .fock import (
    LinearLayer,
    MeshBlock,
    NetworkProgram,
    PhotonicState,
    QubitLayout,
    TruncateAux,
)
from .linalg import IDENTITY_SETTING, MziSetting, embed_block, setting_unitary

SINGLE_QUBIT_GATES = ("I", "X", "Y", "Z", "H", "T", "RZ", "RX", "RY")
ROTATION_GATES = ("RZ", "RX", "RY")
TWO_QUBIT_GATES = ("CZ", "CNOT", "SWAP")


class CircuitParseError(ValueError):
    """Raised for structurally invalid circuit descriptions."""


class IllegalCascade(RuntimeError):
    """Raised when two post-selected gates act on the same qubit pair."""


class PlacementOverflow(RuntimeError):
    """Raised when a program does not fit the requested mesh."""


@dataclass(frozen=True)
class GateOp:
    name: str
    qubits: tuple[int, ...]
    angle: float | None = None


@dataclass(frozen=True)
class CircuitIR:
    qubit_count: int
    gates: tuple[GateOp, ...]


@dataclass(frozen=True)
class CompileOptions:
    """Knobs for circuit compilation.

    ``scheme`` selects the mesh geometry (``"clements"`` rectangular or
    ``"reck"`` triangular).  ``cz_form`` picks the CZ realization:
    ``"compressed"`` (swap, coupling layer, swap; 3 layers) or
    ``"swap-sandwich"`` (the same network with the mode relabeling spelled
    out as two crossings per side; 5 layers).  ``restore_swaps`` routes
    qubits back to their home triplets after each two-qubit gate.
    ``place`` assigns the program to a ``3n``-mode mesh; a universal mesh
    has a fixed column budget, so deep circuits can overflow it - disable
    placement when only the program is needed (simulation does this).
    ``emit_truncations`` exists so tests can show what goes wrong without
    truncation; leave it on.
    """

    scheme: str = "clements"
    cz_form: str = "compressed"
    allow_illegal_cascade: bool = False
    restore_swaps: bool = True
    place: bool = True
    emit_truncations: bool = True


@dataclass
class CascadeLedger:
    """Record of qubit pairs that have consumed a post-selected gate."""

    pairs: list[frozenset[int]] = field(default_factory=list)

    def seen(self, a: int, b: int) -> bool:
        return frozenset((a, b)) in self.pairs

    def record(self, a: int, b: int) -> None:
        self.pairs.append(frozenset((a, b)))


@dataclass(frozen=True)
class PlacedBlock:
    column: int
    top_mode: int
    setting: MziSetting
    role: str


@dataclass(frozen=True)
class TruncationMark:
    """Truncation of ``modes`` between mesh columns ``after_column`` and
    ``after_column + 1`` (-1 means before the first column)."""

    after_column: int
    modes: tuple[int, ...]


@dataclass(frozen=True)
class MeshAssignment:
    scheme: str
    mode_count: int
    columns: tuple[tuple[int, ...], ...]
    placements: tuple[PlacedBlock, ...]
    truncations: tuple[TruncationMark, ...]

    @property
    def slot_count(self) -> int:
        return sum(len(c) for c in self.columns)

    def phase_table(self) -> dict:
        """JSON-ready table of every slot's phases; unused slots carry the
        identity setting."""
        assigned = {
            (p.column, p.top_mode): (p.setting, p.role) for p in self.placements
        }
        slots = []
        for col, tops in enumerate(self.columns):
            for top in tops:
                setting, role = assigned.get((col, top), (IDENTITY_SETTING, "ID"))
                entry = {
                    "column": col,
                    "top_mode": top,
                    "theta1": setting.theta1,
                    "theta2": setting.theta2,
                    "phi1": setting.phi1,
                    "phi2": setting.phi2,
                    "role": role,
                }
                if setting.is_extended:
                    entry["phi3"] = setting.phi3
                    entry["phi4"] = setting.phi4
                slots.append(entry)
        return {
            "scheme": self.scheme,
            "mode_count": self.mode_count,
            "columns": [list(c) for c in self.columns],
            "slots": slots,
            "truncations": [
                {"after_column": t.after_column, "modes": list(t.modes)}
                for t in self.truncations
            ],
        }


@dataclass(frozen=True)
class CompileResult:
    program: NetworkProgram
    assignment: MeshAssignment | None
    ledger: CascadeLedger
    positions: tuple[int, ...]
    flips: tuple[int, ...]
    qubit_count: int


@dataclass(frozen=True)
class SimulationResult:
    amplitudes: np.ndarray
    success_probability: float
    final_state: PhotonicState
    compile_result: CompileResult


def parse_circuit(data) -> CircuitIR:
    """Validate a circuit dict ``{"qubits": n, "gates": [...]}``.

    Gate entries: ``{"g": "H", "q": 0}``, ``{"g": "RZ", "q": 0, "angle": x}``,
    ``{"g": "CNOT", "c": 0, "t": 1}``, ``{"g": "CZ", "c": 0, "t": 1}``,
    ``{"g": "SWAP", "a": 0, "b": 1}``.
    """
    if not isinstance(data, dict):
        raise CircuitParseError("circuit must be a JSON object")
    qubits = data.get("qubits")
    if not isinstance(qubits, int) or isinstance(qubits, bool) or qubits < 1:
        raise CircuitParseError(f"'qubits' must be a positive integer, got {qubits!r}")
    raw_gates = data.get("gates", [])
    if not isinstance(raw_gates, list):
        raise CircuitParseError("'gates' must be a list")

    def index(entry: dict, key: str) -> int:
        v = entry.get(key)
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < qubits:
            raise CircuitParseError(
                f"gate {entry.get('g')!r}: {key!r} must be a qubit index in "
                f"[0, {qubits}), got {v!r}"
            )
        return v

    ops: list[GateOp] = []
    for entry in raw_gates:
        if not isinstance(entry, dict) or "g" not in entry:
            raise CircuitParseError(f"gate entry must be an object with 'g': {entry!r}")
        name = str(entry["g"]).upper()
        if name in SINGLE_QUBIT_GATES:
            q = index(entry, "q")
            angle = entry.get("angle")
            if name in ROTATION_GATES:
                if not isinstance(angle, (int, float)) or isinstance(angle, bool):
                    raise CircuitParseError(f"{name} needs a numeric 'angle'")
                ops.append(GateOp(name, (q,), float(angle)))
            else:
                if angle is not None:
                    raise CircuitParseError(f"{name} takes no 'angle'")
                ops.append(GateOp(name, (q,)))
        elif name in ("CZ", "CNOT"):
            c, t = index(entry, "c"), index(entry, "t")
            if c == t:
                raise CircuitParseError(f"{name} needs two distinct qubits")
            ops.append(GateOp(name, (c, t)))
        elif name == "SWAP":
            a, b = index(entry, "a"), index(entry, "b")
            if a == b:
                raise CircuitParseError("SWAP needs two distinct qubits")
            ops.append(GateOp(name, (a, b)))
        else:
            raise CircuitParseError(f"unknown gate {entry['g']!r}")
    return CircuitIR(qubits, tuple(ops))


def bell_circuit() -> CircuitIR:
    return CircuitIR(2, (GateOp("H", (0,)), GateOp("CNOT", (0, 1))))


def ghz_chain_circuit(n: int) -> CircuitIR:
    """H on qubit 0 followed by a CNOT chain (0,1), (1,2), ..."""
    if n < 2:
        raise ValueError("GHZ chain needs at least 2 qubits")
    ops = [GateOp("H", (0,))]
    ops += [GateOp("CNOT", (q, q + 1)) for q in range(n - 1)]
    return CircuitIR(n, tuple(ops))


def clements_columns(mode_count: int) -> tuple[tuple[int, ...], ...]:
    """Rectangular mesh: ``m`` columns alternating even/odd block tops."""
    cols = []
    for c in range(mode_count):
        start = 0 if c % 2 == 0 else 1
        cols.append(tuple(range(start, mode_count - 1, 2)))
    return tuple(cols)


def reck_columns(mode_count: int) -> tuple[tuple[int, ...], ...]:
    """Triangular mesh: ``2m - 3`` columns growing toward the middle."""
    m = mode_count
    cols = []
    for c in range(1, 2 * m - 2):
        low = m - 1 - c if c <= m - 1 else c - m + 1
        cols.append(tuple(range(low, m - 1, 2)))
    return tuple(cols)


def mesh_columns(scheme: str, mode_count: int) -> tuple[tuple[int, ...], ...]:
    if scheme == "clements":
        return clements_columns(mode_count)
    if scheme == "reck":
        return reck_columns(mode_count)
    raise ValueError(f"unknown mesh scheme {scheme!r}")


def place_in_mesh(
    program: NetworkProgram, scheme: str, mode_count: int
) -> MeshAssignment:
    """Greedy earliest-column placement of a program's blocks in a mesh.

    Each block goes into the first column that has a slot at its top mode
    and is not earlier than any previously placed block sharing one of its
    modes; blocks of one program layer may spread over several columns.
    Truncation steps become column markers and act as barriers on their
    modes.
    """
    if program.mode_count != mode_count:
        raise ValueError(
            f"program has {program.mode_count} modes, mesh has {mode_count}"
        )
    columns = mesh_columns(scheme, mode_count)
    col_sets = [frozenset(c) for c in columns]
    free = [0] * mode_count
    placements: list[PlacedBlock] = []
    truncations: list[TruncationMark] = []
    for step in program.steps:
        if isinstance(step, TruncateAux):
            after = max(free[m] for m in step.modes) - 1
            truncations.append(TruncationMark(after, tuple(step.modes)))
            for m in step.modes:
                free[m] = max(free[m], after + 1)
            continue
        if not isinstance(step, LinearLayer):
            raise TypeError(f"unknown program step {type(step).__name__}")
        if step.blocks is None:
            raise ValueError(
                "program layer lacks block structure and cannot be placed"
            )
        for blk in sorted(step.blocks, key=lambda b: b.top_mode):
            lo, hi = blk.top_mode, blk.top_mode + 1
            col = max(free[lo], free[hi])
            while col < len(columns) and lo not in col_sets[col]:
                col += 1
            if col >= len(columns):
                raise PlacementOverflow(
                    f"block at modes ({lo}, {hi})"
                    + (f" [{step.label}]" if step.label else "")
                    + f" does not fit the {scheme} mesh on {mode_count} modes"
                )
            placements.append(PlacedBlock(col, lo, blk.setting, blk.role))
            free[lo] = free[hi] = col + 1
    return MeshAssignment(
        scheme=scheme,
        mode_count=mode_count,
        columns=columns,
        placements=tuple(placements),
        truncations=tuple(truncations),
    )


def assignment_program(assignment: MeshAssignment) -> NetworkProgram:
    """Rebuild a runnable program from mesh phases alone.

    Every slot of every column is evaluated from its stored setting
    (identity for unused slots), so running this program checks that the
    placed phase table - not the original gate matrices - reproduces the
    intended physics.
    """
    assigned = {
        (p.column, p.top_mode): (p.setting, p.role) for p in assignment.placements
    }
    trunc_after: dict[int, list[TruncationMark]] = {}
    steps: list[LinearLayer | TruncateAux] = []
    for mark in assignment.truncations:
        if mark.after_column < 0:
            steps.append(TruncateAux(mark.modes))
        else:
            trunc_after.setdefault(mark.after_column, []).append(mark)
    m = assignment.mode_count
    for col, tops in enumerate(assignment.columns):
        mat = np.eye(m, dtype=complex)
        blocks = []
        for top in tops:
            setting, role = assigned.get((col, top), (IDENTITY_SETTING, "ID"))
            mat = mat @ embed_block(setting_unitary(setting).T, top + 1, m)
            blocks.append(MeshBlock(top, setting, role))
        steps.append(LinearLayer(mat, tuple(blocks), label=f"column{col}"))
        for mark in trunc_after.get(col, ()):
            steps.append(TruncateAux(mark.modes))
    return NetworkProgram(m, tuple(steps))


def enumerate_placements(pattern, scheme: str, mode_count: int) -> int:
    """Count the placements of a layered block pattern in a mesh.

    ``pattern`` is a gate descriptor or a sequence of layers, each layer a
    sequence of block top modes.  Counted are (a) rigid placements - all
    layers in consecutive columns, layer ``i`` entirely inside column
    ``start + i`` - and (b) for a single layer spanning the full width of
    a rectangular mesh, the two staircase families where consecutive
    blocks step one column pair up or down.  The staircases exist because
    full-width layers of crossings commute block by block; meshes with a
    triangular profile do not admit them.
    """
    if isinstance(pattern, gates.GateDescriptor):
        layers = [[blk.top_mode for blk in layer] for layer in pattern.mzi_layers]
    else:
        layers = [list(layer) for layer in pattern]
    if not layers:
        raise ValueError("pattern has no layers")
    columns = mesh_columns(scheme, mode_count)
    col_sets = [frozenset(c) for c in columns]
    count = 0
    for start in range(len(columns) - len(layers) + 1):
        if all(
            set(layer) <= col_sets[start + i] for i, layer in enumerate(layers)
        ):
            count += 1
    if (
        scheme == "clements"
        and len(layers) == 1
        and sorted(layers[0]) == list(range(0, mode_count - 1, 2))
        and len(layers[0]) > 1
    ):
        span = 2 * (len(layers[0]) - 1)
        starts = [
            c0 for c0 in range(0, len(columns), 2) if c0 + span < len(columns)
        ]
        count += 2 * len(starts)  # one ascending + one descending staircase each
    return count


class _Emitter:
    """Accumulates program steps while tracking qubit positions and flips."""

    def __init__(self, qubit_count: int, options: CompileOptions):
        self.n = qubit_count
        self.m = 3 * qubit_count
        self.options = options
        self.steps: list[LinearLayer | TruncateAux] = []
        self.positions = list(range(qubit_count))
        self.qubit_at = list(range(qubit_count))
        self.flips = [0] * qubit_count
        self.ledger = CascadeLedger()

    def emit_layers(self, layers, offset: int, label: str) -> None:
        self.steps.extend(
            gates.layers_to_steps(layers, self.m, offset=offset, label=label)
        )

    def physical_swap(self, p: int, label: str) -> None:
        """SWAP2 between triplets ``p`` and ``p+1``; both photons rail-flip."""
        self.emit_layers(
            gates.swap_networks()["SWAP2"].mzi_layers, 3 * p, label
        )
        qa, qb = self.qubit_at[p], self.qubit_at[p + 1]
        self.qubit_at[p], self.qubit_at[p + 1] = qb, qa
        self.positions[qa], self.positions[qb] = p + 1, p
        self.flips[qa] ^= 1
        self.flips[qb] ^= 1

    def route_adjacent(self, a: int, b: int) -> list[int]:
        """Move the higher of the two carriers next to the lower one."""
        lo = min(self.positions[a], self.positions[b])
        hi = max(self.positions[a], self.positions[b])
        swaps = []
        for p in range(hi - 1, lo, -1):
            self.physical_swap(p, f"route q{a}-q{b}")
            swaps.append(p)
        return swaps

    def unflip(self, q: int) -> None:
        if not self.flips[q]:
            return
        top = 3 * self.positions[q] + 1
        self.emit_layers(
            ((gates.device_block(0, gates.PAULI_X, "X"),),),
            top,
            f"unflip q{q}",
        )
        self.flips[q] = 0

    def single_gate(self, op: GateOp) -> None:
        q = op.qubits[0]
        g = gates.single_qubit_matrix(op.name, op.angle)
        role = op.name if op.angle is None else f"{op.name}({op.angle:g})"
        if self.flips[q]:
            g = gates.PAULI_X @ g @ gates.PAULI_X
            role += "*"
        top = 3 * self.positions[q] + 1
        self.emit_layers(
            ((gates.device_block(0, g, role),),), top, f"{op.name} q{q}"
        )

    def cz_layers(self):
        if self.options.cz_form == "compressed":
            return gates.cz_ps_regular().mzi_layers
        if self.options.cz_form == "swap-sandwich":
            x = gates.device_block
            bar = gates.cz_ps_nonregular().mzi_layers
            return (
                (x(3, gates.PAULI_X, "X"),),
                (x(4, gates.PAULI_X, "X"),),
            ) + bar + (
                (x(4, gates.PAULI_X, "X"),),
                (x(3, gates.PAULI_X, "X"),),
            )
        raise ValueError(f"unknown cz_form {self.options.cz_form!r}")

    def two_qubit_gate(self, op: GateOp) -> None:
        a, b = op.qubits
        post_selected = op.name in ("CZ", "CNOT")
        if post_selected:
            if self.ledger.seen(a, b) and not self.options.allow_illegal_cascade:
                raise IllegalCascade(
                    f"qubits {a} and {b} already shared a post-selected gate; "
                    "cascading a second one breaks the success accounting"
                )
            self.ledger.record(a, b)
        swaps = self.route_adjacent(a, b)
        lo = min(self.positions[a], self.positions[b])
        window = 3 * lo
        if post_selected:
            self.unflip(a)
            self.unflip(b)
            if op.name == "CZ":
                self.emit_layers(self.cz_layers(), window, f"CZ q{a}-q{b}")
            else:
                target = b
                h_top = window + (1 if self.positions[target] == lo else 4)
                h_layer = ((gates.device_block(0, gates.single_qubit_matrix("H"), "H"),),)
                self.emit_layers(h_layer, h_top, f"CNOT H q{target}")
                self.emit_layers(self.cz_layers(), window, f"CNOT q{a}-q{b}")
                self.emit_layers(h_layer, h_top, f"CNOT H q{target}")
            if self.options.emit_truncations:
                self.steps.append(TruncateAux((window, window + 3)))
        else:  # logical SWAP
            self.emit_layers(
                gates.swap_networks()["SWAP2"].mzi_layers, window, f"SWAP q{a}-q{b}"
            )
            # The photons exchange carriers and rail-flip; the logical labels
            # stay with their positions, so the flips cross over.
            fa, fb = self.flips[a], self.flips[b]
            self.flips[a], self.flips[b] = fb ^ 1, fa ^ 1
        if self.options.restore_swaps:
            for p in reversed(swaps):
                self.physical_swap(p, f"restore q{a}-q{b}")

    def result(self) -> CompileResult:
        program = NetworkProgram(self.m, tuple(self.steps))
        assignment = None
        if self.options.place:
            assignment = place_in_mesh(program, self.options.scheme, self.m)
        return CompileResult(
            program=program,
            assignment=assignment,
            ledger=self.ledger,
            positions=tuple(self.positions),
            flips=tuple(self.flips),
            qubit_count=self.n,
        )


def compile_circuit(
    circuit: CircuitIR, options: CompileOptions | None = None
) -> CompileResult:
    """Lower a circuit to a mesh program plus the final waveguide relabeling.

    The returned program acts on ``3 * qubit_count`` modes.  Measurement
    amplitudes must be decoded through ``positions``/``flips`` (see
    :func:`decode_logical`); :func:`simulate_circuit` does this.
    """
    options = options or CompileOptions()
    mesh_columns(options.scheme, 3 * circuit.qubit_count)  # validate scheme early
    em = _Emitter(circuit.qubit_count, options)
    for op in circuit.gates:
        if op.name in SINGLE_QUBIT_GATES:
            em.single_gate(op)
        elif op.name in TWO_QUBIT_GATES:
            em.two_qubit_gate(op)
        else:
            raise CircuitParseError(f"unknown gate {op.name!r}")
    return em.result()


# compile() is the natural name at the package level; keep the builtin alias.
compile = compile_circuit


def compile_ghz_swap_variant(
    options: CompileOptions | None = None,
) -> CompileResult:
    """Three-qubit GHZ in star form with an explicit routing swap left in.

    The circuit is H(0), CNOT(0,1), CNOT(0,2).  Qubit 2 is brought next to
    qubit 0 with one ``SWAP2`` and deliberately *not* routed back, so the
    output arrives in the permuted order with qubits 1 and 2 rail-flipped;
    ``positions = (0, 2, 1)`` and ``flips = (0, 1, 1)`` describe exactly
    that relabeling.  No X correction is inserted before the second CNOT:
    a rail flip on the *target* commutes through a CNOT, which is what
    makes this variant cheap.

    The program is deeper than one pass of a 9-mode universal mesh, so no
    mesh assignment is produced.
    """
    options = replace(options or CompileOptions(), place=False)
    em = _Emitter(3, options)
    em.single_gate(GateOp("H", (0,)))
    em.ledger.record(0, 1)
    h_layer = ((gates.device_block(0, gates.single_qubit_matrix("H"), "H"),),)
    # CNOT(0, 1) on triplets 0-1
    em.emit_layers(h_layer, 4, "CNOT H q1")
    em.emit_layers(em.cz_layers(), 0, "CNOT q0-q1")
    em.emit_layers(h_layer, 4, "CNOT H q1")
    if options.emit_truncations:
        em.steps.append(TruncateAux((0, 3)))
    # route qubit 2 next to qubit 0; stays there
    em.physical_swap(1, "route q2")
    # CNOT(0, 2): target q2 now at triplet 1, rail-flipped - no correction
    em.ledger.record(0, 2)
    em.emit_layers(h_layer, 4, "CNOT H q2")
    em.emit_layers(em.cz_layers(), 0, "CNOT q0-q2")
    em.emit_layers(h_layer, 4, "CNOT H q2")
    if options.emit_truncations:
        em.steps.append(TruncateAux((0, 3)))
    return em.result()


def decode_logical(
    result: fock.PostSelectionResult,
    layout: QubitLayout,
    positions: tuple[int, ...],
    flips: tuple[int, ...],
) -> tuple[np.ndarray, float]:
    """Qubit amplitudes read through a waveguide relabeling.

    Logical qubit ``q`` is read from triplet ``positions[q]``; its bit is
    XORed with ``flips[q]``.  Qubit 0 is the most significant bit.  The
    global phase is fixed by making the largest amplitude real positive.
    """
    n = layout.qubit_count
    amps = np.zeros(2**n, dtype=complex)
    for occ, amp in result.projected_state.terms.items():
        idx = 0
        for q in range(n):
            bit = occ[layout.one_mode(positions[q])] ^ flips[q]
            idx = (idx << 1) | bit
        amps[idx] += amp
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise ValueError("projection left no qubit-structure amplitude")
    return fock.canonical_global_phase(amps / norm), result.success_probability


def simulate_circuit(
    circuit: CircuitIR,
    input_bits="",
    options: CompileOptions | None = None,
) -> SimulationResult:
    """Compile and run a circuit on a computational basis input.

    ``input_bits`` defaults to all zeros.  Amplitudes are normalized;
    ``success_probability`` is the chance that all post-selections succeed
    and the photons come out in qubit structure.  Simulation runs the
    program directly and skips mesh placement, so circuit depth is not
    limited by a mesh column budget here.
    """
    result = compile_circuit(circuit, replace(options or CompileOptions(), place=False))
    layout = QubitLayout(circuit.qubit_count)
    if input_bits == "":
        input_bits = "0" * circuit.qubit_count
    state = fock.prepare_computational_basis(input_bits, layout)
    final = fock.run_program(result.program, state)
    projected = fock.project_qubit_structure(final, layout)
    amps, prob = decode_logical(projected, layout, result.positions, result.flips)
    return SimulationResult(
        amplitudes=amps,
        success_probability=prob,
        final_state=final,
        compile_result=result,
    )
