use std::fmt;

/// A wire: circuit input (0-based), earlier gate output, or a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wire {
    Input(usize),
    Gate(usize),
    Const(bool),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Not(Wire),
    Xor(Wire, Wire),
    And(Wire, Wire),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GateCount {
    pub nots: usize,
    pub xors: usize,
    pub ands: usize,
}

impl GateCount {
    pub const fn new(nots: usize, xors: usize, ands: usize) -> Self {
        GateCount { nots, xors, ands }
    }
}

impl fmt::Display for GateCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}N+{}X+{}A", self.nots, self.xors, self.ands)
    }
}

/// Straight-line program over NOT/XOR/AND, topologically ordered by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
    output: Wire,
}

impl Circuit {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> Wire {
        self.output
    }

    /// Evaluates on input bits packed as `x_i = (x >> (i-1)) & 1`.
    pub fn eval(&self, x: u64) -> bool {
        let mut vals = vec![false; self.gates.len()];
        let get = |w: Wire, vals: &[bool]| match w {
            Wire::Input(i) => x >> i & 1 == 1,
            Wire::Gate(g) => vals[g],
            Wire::Const(c) => c,
        };
        for (i, g) in self.gates.iter().enumerate() {
            vals[i] = match *g {
                Gate::Not(a) => !get(a, &vals),
                Gate::Xor(a, b) => get(a, &vals) ^ get(b, &vals),
                Gate::And(a, b) => get(a, &vals) & get(b, &vals),
            };
        }
        get(self.output, &vals)
    }

    pub fn eval_bits(&self, x: &[bool]) -> bool {
        assert_eq!(x.len(), self.n, "input width");
        self.eval(x.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (b as u64) << i))
    }

    /// Bit-sliced evaluation: lane j of the result uses lane j of each input word.
    pub fn eval_sliced(&self, inputs: &[u64], scratch: &mut Vec<u64>) -> u64 {
        scratch.clear();
        let get = |w: Wire, vals: &[u64]| match w {
            Wire::Input(i) => inputs[i],
            Wire::Gate(g) => vals[g],
            Wire::Const(c) => {
                if c {
                    !0
                } else {
                    0
                }
            }
        };
        for g in &self.gates {
            let v = match *g {
                Gate::Not(a) => !get(a, scratch),
                Gate::Xor(a, b) => get(a, scratch) ^ get(b, scratch),
                Gate::And(a, b) => get(a, scratch) & get(b, scratch),
            };
            scratch.push(v);
        }
        get(self.output, scratch)
    }
}

pub fn gate_count(c: &Circuit) -> GateCount {
    let mut t = GateCount::default();
    for g in &c.gates {
        match g {
            Gate::Not(_) => t.nots += 1,
            Gate::Xor(..) => t.xors += 1,
            Gate::And(..) => t.ands += 1,
        }
    }
    t
}

pub fn eval_circuit(c: &Circuit, x: &[bool]) -> bool {
    c.eval_bits(x)
}

/// Incremental circuit construction. Inputs are addressed 1-based to match
/// the usual X1..Xn naming.
#[derive(Debug)]
pub struct CircuitBuilder {
    n: usize,
    gates: Vec<Gate>,
}

impl CircuitBuilder {
    pub fn new(n: usize) -> Self {
        CircuitBuilder { n, gates: Vec::new() }
    }

    pub fn var(&self, i: usize) -> Wire {
        assert!(i >= 1 && i <= self.n, "input x{i} out of range");
        Wire::Input(i - 1)
    }

    fn push(&mut self, g: Gate) -> Wire {
        self.gates.push(g);
        Wire::Gate(self.gates.len() - 1)
    }

    pub fn not(&mut self, a: Wire) -> Wire {
        self.push(Gate::Not(a))
    }

    pub fn xor(&mut self, a: Wire, b: Wire) -> Wire {
        self.push(Gate::Xor(a, b))
    }

    pub fn and(&mut self, a: Wire, b: Wire) -> Wire {
        self.push(Gate::And(a, b))
    }

    /// Left fold; a single wire costs nothing.
    pub fn xor_all(&mut self, ws: &[Wire]) -> Wire {
        let mut acc = *ws.first().expect("non-empty");
        for &w in &ws[1..] {
            acc = self.xor(acc, w);
        }
        acc
    }

    pub fn and_all(&mut self, ws: &[Wire]) -> Wire {
        let mut acc = *ws.first().expect("non-empty");
        for &w in &ws[1..] {
            acc = self.and(acc, w);
        }
        acc
    }

    /// Product of the given 1-based inputs.
    pub fn product(&mut self, vars: &[usize]) -> Wire {
        let ws: Vec<Wire> = vars.iter().map(|&v| self.var(v)).collect();
        self.and_all(&ws)
    }

    pub fn finish(self, output: Wire) -> Circuit {
        Circuit { n: self.n, gates: self.gates, output }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passthrough_has_no_gates() {
        let b = CircuitBuilder::new(3);
        let w = b.var(2);
        let c = b.finish(w);
        assert_eq!(gate_count(&c), GateCount::new(0, 0, 0));
        assert!(c.eval(0b010));
        assert!(!c.eval(0b101));
    }

    #[test]
    fn constant_one() {
        let c = CircuitBuilder::new(2).finish(Wire::Const(true));
        assert!((0..4).all(|x| c.eval(x)));
        assert!(eval_circuit(&c, &[false, true]));
    }

    #[test]
    fn sliced_agrees_with_scalar() {
        let mut b = CircuitBuilder::new(3);
        let (x1, x2, x3) = (b.var(1), b.var(2), b.var(3));
        let t = b.and(x1, x2);
        let u = b.not(x3);
        let o = b.xor(t, u);
        let c = b.finish(o);
        assert_eq!(gate_count(&c).to_string(), "1N+1X+1A");
        let inputs = [0xAAu64, 0xCC, 0xF0];
        let mut scratch = Vec::new();
        let out = c.eval_sliced(&inputs, &mut scratch);
        for x in 0..8 {
            assert_eq!(out >> x & 1 == 1, c.eval(x));
        }
    }
}
