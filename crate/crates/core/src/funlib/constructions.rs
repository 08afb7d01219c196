//! ANF and circuit for each named function and family. Circuits follow the
//! published hand rewritings so the gate tallies can be compared.

use super::circuit::{Circuit, CircuitBuilder, Wire};
use crate::boolfn::AnfPoly;

fn anf(n: usize, terms: &[&[usize]]) -> AnfPoly {
    AnfPoly::from_terms(n, terms).expect("term indices in range")
}

fn anf_owned(n: usize, terms: &[Vec<usize>]) -> AnfPoly {
    let refs: Vec<&[usize]> = terms.iter().map(|t| t.as_slice()).collect();
    anf(n, &refs)
}

/// h5 on inputs (X1, X2, Z1, Z2, Z3) given as 1-based builder indices.
pub(crate) fn h5_into(b: &mut CircuitBuilder, v: [usize; 5]) -> Wire {
    let [x1, x2, z1, z2, z3] = v.map(|i| b.var(i));
    let a = b.xor(z1, z3);
    let bb = b.xor(z2, z3);
    let c = b.xor(a, z2);
    let p = b.and(x1, x2);
    let t1 = b.and(x1, a);
    let t2 = b.and(x2, bb);
    let t3 = b.and(p, c);
    b.xor_all(&[z1, z2, t1, t2, t3])
}

pub fn h5() -> (AnfPoly, Circuit) {
    let a = anf(5, &[&[3], &[4], &[1, 3], &[1, 5], &[2, 4], &[2, 5], &[1, 2, 3], &[1, 2, 4], &[1, 2, 5]]);
    let mut b = CircuitBuilder::new(5);
    let o = h5_into(&mut b, [1, 2, 3, 4, 5]);
    (a, b.finish(o))
}

pub fn h7() -> (AnfPoly, Circuit) {
    // X1..X3 = 1..3, Z1..Z4 = 4..7
    let a = anf(
        7,
        &[
            &[4, 1, 2, 3],
            &[4, 1, 2],
            &[4, 2, 3],
            &[4, 3],
            &[4],
            &[5, 1, 2, 3],
            &[5, 1],
            &[5, 2, 3],
            &[5, 2],
            &[5],
            &[6, 1],
            &[6, 2, 3],
            &[7, 1, 2],
            &[7, 2],
            &[7, 3],
        ],
    );
    let mut b = CircuitBuilder::new(7);
    let [x1, x2, x3, z1, z2, z3, z4] = [1, 2, 3, 4, 5, 6, 7].map(|i| b.var(i));
    let t1 = b.not(x1);
    let t2 = b.and(x1, x2);
    let t3 = b.and(x2, x3);
    let t4 = b.and(x2, t1);
    let t5 = b.and(t3, t1);
    let c4 = b.xor(x3, t4);
    let c3 = b.xor(x1, t3);
    let c2a = b.xor(t1, x2);
    let c2 = b.xor(c2a, t5);
    let c1a = b.xor(x3, t5);
    let c1b = b.xor(c1a, t2);
    let c1 = b.not(c1b);
    let p4 = b.and(z4, c4);
    let p3 = b.and(z3, c3);
    let p2 = b.and(z2, c2);
    let p1 = b.and(z1, c1);
    let o = b.xor_all(&[p4, p3, p2, p1]);
    (a, b.finish(o))
}

fn h2k_anf_terms(us: &[usize], vs: &[usize]) -> Vec<Vec<usize>> {
    let mut terms: Vec<Vec<usize>> = us.iter().zip(vs).map(|(&u, &v)| vec![u, v]).collect();
    terms.push(us.to_vec());
    terms
}

/// Σ U_iV_i ⊕ ΠU_i written as ... ⊕ U_k(V_k ⊕ U_1⋯U_{k−1}).
pub(crate) fn h2k_into(b: &mut CircuitBuilder, us: &[usize], vs: &[usize]) -> Wire {
    let k = us.len();
    let mut terms = Vec::with_capacity(k);
    for i in 0..k - 1 {
        let (u, v) = (b.var(us[i]), b.var(vs[i]));
        terms.push(b.and(u, v));
    }
    let (uk, vk) = (b.var(us[k - 1]), b.var(vs[k - 1]));
    let last = if k == 1 {
        let nv = b.not(vk);
        b.and(uk, nv)
    } else {
        let prod = b.product(&us[..k - 1]);
        let inner = b.xor(vk, prod);
        b.and(uk, inner)
    };
    terms.push(last);
    b.xor_all(&terms)
}

pub fn h2k(k: usize) -> (AnfPoly, Circuit) {
    let us: Vec<usize> = (1..=k).collect();
    let vs: Vec<usize> = (k + 1..=2 * k).collect();
    let a = anf_owned(2 * k, &h2k_anf_terms(&us, &vs));
    let mut b = CircuitBuilder::new(2 * k);
    let o = h2k_into(&mut b, &us, &vs);
    (a, b.finish(o))
}

/// h5 ⊕ h2k on (X1, X2, Z1, Z2, Z3, U1..Uk, V1..Vk).
pub fn h5p2k(k: usize) -> (AnfPoly, Circuit) {
    let n = 5 + 2 * k;
    let (a5, _) = h5();
    let us: Vec<usize> = (6..6 + k).collect();
    let vs: Vec<usize> = (6 + k..6 + 2 * k).collect();
    let a = a5.shifted(0, n).xor(&anf_owned(n, &h2k_anf_terms(&us, &vs)));
    let mut b = CircuitBuilder::new(n);
    let l = h5_into(&mut b, [1, 2, 3, 4, 5]);
    let r = h2k_into(&mut b, &us, &vs);
    let o = b.xor(l, r);
    (a, b.finish(o))
}

fn paired_terms(k: usize) -> Vec<Vec<usize>> {
    (1..=k).map(|i| vec![i, k + i]).collect()
}

pub fn g10() -> (AnfPoly, Circuit) {
    // U1..U5 = 1..5, V1..V5 = 6..10
    let mut terms = paired_terms(5);
    terms.push(vec![1, 2, 3, 4, 6, 7, 8]);
    terms.push(vec![1, 2, 9, 10]);
    terms.push(vec![3, 4, 10]);
    let a = anf_owned(10, &terms);
    let mut b = CircuitBuilder::new(10);
    let u = |b: &CircuitBuilder, i: usize| b.var(i);
    let v = |b: &CircuitBuilder, i: usize| b.var(5 + i);
    let uv1 = b.and(u(&b, 1), v(&b, 1));
    let uv2 = b.and(u(&b, 2), v(&b, 2));
    let uv3 = b.and(u(&b, 3), v(&b, 3));
    let p23 = b.and(uv2, uv3);
    let p234 = b.and(p23, u(&b, 4));
    let np = b.not(p234);
    let t1 = b.and(uv1, np);
    let u12 = b.and(u(&b, 1), u(&b, 2));
    let u12v5 = b.and(u12, v(&b, 5));
    let s4 = b.xor(u(&b, 4), u12v5);
    let t4 = b.and(v(&b, 4), s4);
    let u34 = b.and(u(&b, 3), u(&b, 4));
    let s5 = b.xor(u(&b, 5), u34);
    let t5 = b.and(v(&b, 5), s5);
    let o = b.xor_all(&[t1, uv2, uv3, t4, t5]);
    (a, b.finish(o))
}

pub fn f10() -> (AnfPoly, Circuit) {
    let mut terms = paired_terms(5);
    terms.push(vec![1, 2, 3, 4, 6, 7, 8, 9]);
    terms.push(vec![1, 2, 9, 10]);
    let a = anf_owned(10, &terms);
    let mut b = CircuitBuilder::new(10);
    let uv: Vec<Wire> = (1..=4).map(|i| {
        let (x, y) = (b.var(i), b.var(5 + i));
        b.and(x, y)
    }).collect();
    let p = b.and_all(&uv[1..]);
    let np = b.not(p);
    let t1 = b.and(uv[0], np);
    let u12 = b.product(&[1, 2, 9]);
    let s5 = b.xor(b.var(5), u12);
    let t5 = b.and(b.var(10), s5);
    let o = b.xor_all(&[t1, uv[1], uv[2], uv[3], t5]);
    (a, b.finish(o))
}

pub fn grainv1_g() -> (AnfPoly, Circuit) {
    let a = anf(
        10,
        &[
            &[1], &[3], &[4], &[5], &[6], &[7], &[8], &[9],
            &[9, 10], &[5, 6], &[1, 2], &[7, 8, 9], &[3, 4, 5],
            &[1, 4, 7, 10], &[5, 6, 8, 9], &[2, 3, 9, 10],
            &[6, 7, 8, 9, 10], &[1, 2, 3, 4, 5], &[3, 4, 5, 6, 7, 8],
        ],
    );
    let mut b = CircuitBuilder::new(10);
    let x: Vec<Wire> = (0..=10).map(|i| if i == 0 { Wire::Const(false) } else { b.var(i) }).collect();
    // X3(1 ⊕ X4X5(1 ⊕ X1X2 ⊕ X6X7X8) ⊕ X2X9X10)
    let p12 = b.and(x[1], x[2]);
    let p67 = b.and(x[6], x[7]);
    let p678 = b.and(p67, x[8]);
    let s = b.xor(p12, p678);
    let ns = b.not(s);
    let p45 = b.and(x[4], x[5]);
    let q = b.and(p45, ns);
    let p910 = b.and(x[9], x[10]);
    let p2910 = b.and(x[2], p910);
    let r = b.xor(q, p2910);
    let nr = b.not(r);
    let t3 = b.and(x[3], nr);
    // X6(1 ⊕ X5 ⊕ X8X9(X5 ⊕ X7X10))
    let p89 = b.and(x[8], x[9]);
    let p710 = b.and(x[7], x[10]);
    let u = b.xor(x[5], p710);
    let v = b.and(p89, u);
    let w = b.xor(x[5], v);
    let nw = b.not(w);
    let t6 = b.and(x[6], nw);
    // X7(1 ⊕ X8X9 ⊕ X1X4X10)
    let p14 = b.and(x[1], x[4]);
    let p1410 = b.and(p14, x[10]);
    let y = b.xor(p89, p1410);
    let ny = b.not(y);
    let t7 = b.and(x[7], ny);
    let n2 = b.not(x[2]);
    let t1 = b.and(x[1], n2);
    let n10 = b.not(x[10]);
    let t9 = b.and(x[9], n10);
    let o = b.xor_all(&[t3, t6, t7, t1, t9, x[4], x[5], x[8]]);
    (a, b.finish(o))
}

pub fn grainv1_h() -> (AnfPoly, Circuit) {
    let a = anf(
        5,
        &[&[2], &[5], &[1, 4], &[3, 4], &[4, 5], &[1, 2, 3], &[1, 3, 4], &[1, 3, 5], &[2, 3, 5], &[3, 4, 5]],
    );
    let mut b = CircuitBuilder::new(5);
    let [y1, y2, y3, y4, y5] = [1, 2, 3, 4, 5].map(|i| b.var(i));
    // Y2 ⊕ Y5 ⊕ Y4(Y3(1 ⊕ s) ⊕ s) ⊕ Y5Y3(Y1 ⊕ Y2) ⊕ Y1Y2Y3 with s = Y1 ⊕ Y5
    let s = b.xor(y1, y5);
    let ns = b.not(s);
    let a3 = b.and(y3, ns);
    let a4 = b.xor(a3, s);
    let t4 = b.and(y4, a4);
    let y12 = b.xor(y1, y2);
    let p53 = b.and(y5, y3);
    let t5 = b.and(p53, y12);
    let p12 = b.and(y1, y2);
    let t6 = b.and(p12, y3);
    let o = b.xor_all(&[y2, y5, t4, t5, t6]);
    (a, b.finish(o))
}

pub fn grain128a_g() -> (AnfPoly, Circuit) {
    // Y1..Y14 = 1..14, Z1..Z10 = 15..24
    let mut terms: Vec<Vec<usize>> = (0..7).map(|i| vec![2 * i + 1, 2 * i + 2]).collect();
    terms.push(vec![15, 16, 17, 18]);
    terms.push(vec![19, 20, 21]);
    terms.push(vec![22, 23, 24]);
    let a = anf_owned(24, &terms);
    let mut b = CircuitBuilder::new(24);
    let ws: Vec<Wire> = terms.iter().map(|t| b.product(t)).collect();
    let o = b.xor_all(&ws);
    (a, b.finish(o))
}

pub fn grain128a_h() -> (AnfPoly, Circuit) {
    let terms: Vec<Vec<usize>> = vec![vec![1, 2], vec![3, 4], vec![5, 6], vec![7, 8], vec![1, 5, 9]];
    let a = anf_owned(9, &terms);
    let mut b = CircuitBuilder::new(9);
    let ws: Vec<Wire> = terms.iter().map(|t| b.product(t)).collect();
    let o = b.xor_all(&ws);
    (a, b.finish(o))
}

/// (k1, k2) for the generalized triangular function on k variables.
pub fn triangular_params(k: usize) -> (usize, usize) {
    let mut k1 = 1;
    while (k1 + 1) * (k1 + 2) / 2 <= k {
        k1 += 1;
    }
    (k1, k1 * (k1 + 1) / 2)
}

/// Monomials of E_k as 1-based variable lists: degrees 1, 2, .., k1−1, then the rest.
pub fn triangular_monomials(k: usize) -> Vec<Vec<usize>> {
    let (k1, k2) = triangular_params(k);
    let mut out = Vec::with_capacity(k1);
    let mut next = 1;
    for d in 1..k1 {
        out.push((next..next + d).collect());
        next += d;
    }
    debug_assert_eq!(next, k2 - k1 + 1);
    out.push((next..=k).collect());
    out
}

pub fn triangular(k: usize) -> (AnfPoly, Circuit) {
    let monos = triangular_monomials(k);
    let a = anf_owned(k, &monos);
    let mut b = CircuitBuilder::new(k);
    let ws: Vec<Wire> = monos.iter().map(|m| b.product(m)).collect();
    let o = b.xor_all(&ws);
    (a, b.finish(o))
}

/// Σ U_iV_i ⊕ E_k(U), each E_k monomial grouped with the U_lV_l of its first variable.
pub fn g2k(k: usize) -> (AnfPoly, Circuit) {
    let n = 2 * k;
    let monos = triangular_monomials(k);
    let mut terms = paired_terms(k);
    terms.extend(monos.iter().cloned());
    let a = anf_owned(n, &terms);
    let mut b = CircuitBuilder::new(n);
    let mut lead = vec![false; k + 1];
    let mut ws = Vec::new();
    for m in &monos {
        let l = m[0];
        lead[l] = true;
        let (ul, vl) = (b.var(l), b.var(k + l));
        let inner = if m.len() == 1 {
            b.not(vl)
        } else {
            let rest = b.product(&m[1..]);
            b.xor(vl, rest)
        };
        ws.push(b.and(ul, inner));
    }
    for i in (1..=k).filter(|&i| !lead[i]) {
        let (u, v) = (b.var(i), b.var(k + i));
        ws.push(b.and(u, v));
    }
    let o = b.xor_all(&ws);
    (a, b.finish(o))
}
