//! Subgroups of Z/n_1 × ... × Z/n_k (a modulus of 0 stands for Z) kept in Howell
//! echelon form, so that membership, enumeration, kernels and sizes are exact.

use num_integer::Integer;

fn red(x: i128, n: u64) -> i128 {
    if n == 0 {
        x
    } else {
        x.rem_euclid(n as i128)
    }
}

/// Returns (g, s, t) with s·a + t·b = g = gcd(a, b) ≥ 0.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

#[derive(Clone, Debug)]
pub struct Lattice {
    moduli: Vec<u64>,
    rows: Vec<Option<Vec<i128>>>,
}

impl Lattice {
    pub fn new(moduli: Vec<u64>) -> Lattice {
        let n = moduli.len();
        Lattice { moduli, rows: vec![None; n] }
    }

    pub fn ncols(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    fn reduce_in_place(&self, v: &mut [i128]) {
        for (x, &n) in v.iter_mut().zip(&self.moduli) {
            *x = red(*x, n);
        }
    }

    fn axpy(&self, v: &mut [i128], k: i128, r: &[i128], from: usize) {
        for c in from..v.len() {
            v[c] = red(v[c] + k * r[c], self.moduli[c]);
        }
    }

    /// Integer columns keep a positive pivot.
    fn normalize(&self, c: usize, r: &mut [i128]) {
        if self.moduli[c] == 0 && r[c] < 0 {
            for x in r.iter_mut() {
                *x = -*x;
            }
        }
    }

    /// Additive order of the pivot entry of row `r` in column `c` (`None` over Z).
    fn pivot_order(&self, c: usize, r: &[i128]) -> Option<i128> {
        let n = self.moduli[c] as i128;
        (n != 0).then(|| n / r[c].gcd(&n))
    }

    /// The k with k·a = x in column c, if one exists.
    fn quotient(&self, c: usize, a: i128, x: i128) -> Option<i128> {
        let n = self.moduli[c] as i128;
        if n == 0 {
            return (x % a == 0).then(|| x / a);
        }
        let d = a.gcd(&n);
        if x % d != 0 {
            return None;
        }
        let m = n / d;
        let (_, inv, _) = ext_gcd(a / d, m);
        Some(((x / d) * inv).rem_euclid(m))
    }

    fn saturation(&self, c: usize, r: &[i128]) -> Option<Vec<i128>> {
        let n = self.moduli[c];
        if n == 0 {
            return None;
        }
        let k = self.pivot_order(c, r)?;
        let mut s: Vec<i128> = r.iter().map(|&x| x * k).collect();
        self.reduce_in_place(&mut s);
        (s.iter().any(|&x| x != 0)).then_some(s)
    }

    pub fn insert(&mut self, v: &[i128]) {
        assert_eq!(v.len(), self.ncols());
        let mut work = vec![v.to_vec()];
        while let Some(mut v) = work.pop() {
            self.reduce_in_place(&mut v);
            let mut c = 0;
            while c < v.len() {
                if v[c] == 0 {
                    c += 1;
                    continue;
                }
                match self.rows[c].take() {
                    None => {
                        self.normalize(c, &mut v);
                        if let Some(s) = self.saturation(c, &v) {
                            work.push(s);
                        }
                        self.rows[c] = Some(v);
                        break;
                    }
                    Some(r) => {
                        let (a, b) = (r[c], v[c]);
                        let (g, s, t) = ext_gcd(a, b);
                        let mut nr: Vec<i128> = r.iter().zip(&v).map(|(&x, &y)| s * x + t * y).collect();
                        let mut nv: Vec<i128> = r.iter().zip(&v).map(|(&x, &y)| (a / g) * y - (b / g) * x).collect();
                        self.reduce_in_place(&mut nr);
                        self.reduce_in_place(&mut nv);
                        self.normalize(c, &mut nr);
                        if let Some(s) = self.saturation(c, &nr) {
                            work.push(s);
                        }
                        self.rows[c] = Some(nr);
                        v = nv;
                        c += 1;
                    }
                }
            }
        }
    }

    /// Reduces `v` by the pivot rows in columns `< upto`; the remainder is returned
    /// together with the multiplier used for each pivot column.
    pub fn reduce_upto(&self, v: &[i128], upto: usize) -> (Vec<i128>, Vec<(usize, i128)>) {
        let mut v = v.to_vec();
        self.reduce_in_place(&mut v);
        let mut used = Vec::new();
        for c in 0..upto {
            if v[c] == 0 {
                continue;
            }
            let Some(r) = &self.rows[c] else { continue };
            let Some(k) = self.quotient(c, r[c], v[c]) else { continue };
            self.axpy(&mut v, -k, r, c);
            used.push((c, k));
        }
        (v, used)
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        let (rem, _) = self.reduce_upto(v, self.ncols());
        rem.iter().all(|&x| x == 0)
    }

    /// Expresses `v` as Σ k_c · row_c, or `None` if it is not in the lattice.
    pub fn decompose(&self, v: &[i128]) -> Option<Vec<(usize, i128)>> {
        let (rem, used) = self.reduce_upto(v, self.ncols());
        rem.iter().all(|&x| x == 0).then_some(used)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &Vec<i128>)> {
        self.rows.iter().enumerate().filter_map(|(c, r)| r.as_ref().map(|r| (c, r)))
    }

    pub fn rank(&self) -> usize {
        self.rows().count()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Rows whose pivot lies at or after column `k`; they generate the subgroup of
    /// elements whose first `k` coordinates vanish.
    pub fn tail_rows(&self, k: usize) -> Vec<Vec<i128>> {
        self.rows().filter(|(c, _)| *c >= k).map(|(_, r)| r.clone()).collect()
    }

    /// Order of the subgroup, or `None` when it is infinite.
    pub fn size(&self) -> Option<u128> {
        let mut s: u128 = 1;
        for (c, r) in self.rows() {
            s = s.checked_mul(self.pivot_order(c, r)? as u128)?;
        }
        Some(s)
    }

    /// Visits every element exactly once (finite columns only); stops early when
    /// the visitor returns `false`. Returns `false` if it stopped early.
    pub fn for_each_element(&self, mut visit: impl FnMut(&[i128]) -> bool) -> bool {
        let gens: Vec<(&Vec<i128>, i128)> = self
            .rows()
            .map(|(c, r)| (r, self.pivot_order(c, r).expect("cannot enumerate an infinite lattice")))
            .collect();
        let mut digits = vec![0i128; gens.len()];
        let mut cur = vec![0i128; self.ncols()];
        loop {
            if !visit(&cur) {
                return false;
            }
            let mut i = 0;
            loop {
                if i == gens.len() {
                    return true;
                }
                digits[i] += 1;
                let (r, ord) = gens[i];
                if digits[i] < ord {
                    self.axpy(&mut cur, 1, r, 0);
                    break;
                }
                digits[i] = 0;
                self.axpy(&mut cur, -(ord - 1), r, 0);
                i += 1;
            }
        }
    }

    pub fn elements(&self) -> Vec<Vec<i128>> {
        let mut out = Vec::new();
        self.for_each_element(|v| {
            out.push(v.to_vec());
            true
        });
        out
    }

    pub fn sum(&self, o: &Lattice) -> Lattice {
        let mut l = self.clone();
        for (_, r) in o.rows() {
            l.insert(r);
        }
        l
    }

    pub fn intersection(&self, o: &Lattice) -> Lattice {
        let k = self.ncols();
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&self.moduli);
        let mut big = Lattice::new(moduli);
        for (_, r) in self.rows() {
            let mut row = r.clone();
            row.extend_from_slice(r);
            big.insert(&row);
        }
        for (_, r) in o.rows() {
            let mut row = r.clone();
            row.extend(std::iter::repeat_n(0, k));
            big.insert(&row);
        }
        let mut out = Lattice::new(self.moduli.clone());
        for row in big.tail_rows(k) {
            out.insert(&row[k..]);
        }
        out
    }

    pub fn is_subset(&self, o: &Lattice) -> bool {
        self.rows().all(|(_, r)| o.contains(r))
    }

    pub fn same_as(&self, o: &Lattice) -> bool {
        self.is_subset(o) && o.is_subset(self)
    }
}

/// Kernel of the additive map whose images of the domain generators are given:
/// each entry is (image in target coordinates, generator in domain coordinates).
pub fn kernel(target: &[u64], domain: &[u64], graph: &[(Vec<i128>, Vec<i128>)]) -> Lattice {
    let t = target.len();
    let mut moduli = target.to_vec();
    moduli.extend_from_slice(domain);
    let mut big = Lattice::new(moduli);
    for (img, x) in graph {
        let mut row = img.clone();
        row.extend_from_slice(x);
        big.insert(&row);
    }
    let mut out = Lattice::new(domain.to_vec());
    for row in big.tail_rows(t) {
        out.insert(&row[t..]);
    }
    out
}

/// Finds domain coordinates x with φ(x) = v, given the graph of φ on generators.
pub fn solve(target: &[u64], domain: &[u64], graph: &[(Vec<i128>, Vec<i128>)], v: &[i128]) -> Option<Vec<i128>> {
    let t = target.len();
    let mut moduli = target.to_vec();
    moduli.extend_from_slice(domain);
    let mut big = Lattice::new(moduli);
    for (img, x) in graph {
        let mut row = img.clone();
        row.extend_from_slice(x);
        big.insert(&row);
    }
    let mut probe = v.to_vec();
    probe.extend(std::iter::repeat_n(0, domain.len()));
    let (rem, _) = big.reduce_upto(&probe, t);
    if rem[..t].iter().any(|&x| x != 0) {
        return None;
    }
    Some(rem[t..].iter().zip(domain).map(|(&x, &n)| red(-x, n)).collect())
}
