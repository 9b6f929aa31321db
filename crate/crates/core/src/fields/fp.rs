//! Arithmetic in F_p and in F_p[x] on ascending coefficient vectors.
//!
//! Polynomials are kept trimmed: no trailing zero coefficients, and the zero
//! polynomial is the empty vector.

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue; `None` for zero.
pub fn inv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(pow(a, p - 2, p))
    }
}

pub fn reduce_int(n: i64, p: u64) -> u64 {
    n.rem_euclid(p as i64) as u64
}

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn trimmed(mut v: Vec<u64>, p: u64) -> Vec<u64> {
    for c in v.iter_mut() {
        *c %= p;
    }
    trim(&mut v);
    v
}

pub fn deg(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn padd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        r.push(add(
            a.get(i).copied().unwrap_or(0),
            b.get(i).copied().unwrap_or(0),
            p,
        ));
    }
    trim(&mut r);
    r
}

pub fn psub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        r.push(sub(
            a.get(i).copied().unwrap_or(0),
            b.get(i).copied().unwrap_or(0),
            p,
        ));
    }
    trim(&mut r);
    r
}

pub fn pneg(a: &[u64], p: u64) -> Vec<u64> {
    a.iter().map(|&c| sub(0, c, p)).collect()
}

pub fn pscale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    if c % p == 0 {
        return Vec::new();
    }
    a.iter().map(|&x| mul(x, c, p)).collect()
}

pub fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += x as u128 * y as u128;
        }
        if i % 64 == 63 {
            for v in acc.iter_mut() {
                *v %= p as u128;
            }
        }
    }
    let mut r: Vec<u64> = acc.into_iter().map(|v| (v % p as u128) as u64).collect();
    trim(&mut r);
    r
}

/// Euclidean division `a = q*b + r`; `b` must be nonzero.
pub fn pdivrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let db = b.len() - 1;
    let lead_inv = inv(b[db], p).expect("leading coefficient is a unit");
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        let f = mul(c, lead_inv, p);
        q[i - db] = f;
        for (j, &bj) in b.iter().enumerate() {
            let k = i - db + j;
            r[k] = sub(r[k], mul(f, bj, p), p);
        }
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

pub fn prem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    pdivrem(a, b, p).1
}

pub fn pmonic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&l) => pscale(a, inv(l, p).expect("nonzero leading coefficient"), p),
    }
}

/// Monic greatest common divisor.
pub fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = prem(&x, &y, p);
        x = y;
        y = r;
    }
    pmonic(&x, p)
}

/// Extended gcd: returns `(g, u, v)` with `u*a + v*b = g`, `g` monic.
pub fn pxgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let l = inv(*r0.last().unwrap(), p).unwrap();
    (pscale(&r0, l, p), pscale(&s0, l, p), pscale(&t0, l, p))
}

pub fn pderiv(a: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul(c, (i as u64) % p, p))
        .collect();
    trim(&mut r);
    r
}

pub fn peval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| add(mul(acc, x, p), c, p))
}

/// Substitutes `x -> x^k`.
pub fn pinflate(a: &[u64], k: usize) -> Vec<u64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; (a.len() - 1) * k + 1];
    for (i, &c) in a.iter().enumerate() {
        r[i * k] = c;
    }
    r
}

/// Inverse of [`pinflate`]; `None` when some exponent is not a multiple of `k`.
pub fn pdeflate(a: &[u64], k: usize) -> Option<Vec<u64>> {
    let mut r = Vec::with_capacity(a.len() / k + 1);
    for (i, &c) in a.iter().enumerate() {
        if i % k == 0 {
            r.push(c);
        } else if c != 0 {
            return None;
        }
    }
    trim(&mut r);
    Some(r)
}

pub fn ppow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = prem(&[1], m, p);
    let mut b = prem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = prem(&pmul(&r, &b, p), m, p);
        }
        b = prem(&pmul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

/// All monic polynomials of exact degree `d` over F_p.
pub fn monic_of_degree(d: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut n| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push(n % p);
            n /= p;
        }
        v.push(1);
        v
    })
}

/// Irreducibility by trial division against every monic polynomial of degree at most deg/2.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(d) = deg(f) else { return false };
    if d == 0 {
        return false;
    }
    for k in 1..=d / 2 {
        for g in monic_of_degree(k, p) {
            if prem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Full factorization into monic irreducibles with multiplicities, by trial division.
/// Returns the leading coefficient and the factor list.
pub fn factor(f: &[u64], p: u64) -> (u64, Vec<(Vec<u64>, usize)>) {
    assert!(!f.is_empty());
    let lead = *f.last().unwrap();
    let mut rest = pmonic(f, p);
    let mut out = Vec::new();
    let mut k = 1;
    while rest.len() > 1 {
        if 2 * k > rest.len() - 1 {
            out.push((rest.clone(), 1));
            break;
        }
        for g in monic_of_degree(k, p) {
            let mut mult = 0;
            loop {
                let (q, r) = pdivrem(&rest, &g, p);
                if !r.is_empty() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
        }
        k += 1;
    }
    (lead, out)
}
