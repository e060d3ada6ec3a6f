//! Construction of the named finite families as explicit multiplication
//! tables (cyclic, dihedral, quaternion) or permutation lists (symmetric).

/// Cyclic group of the given order; element names are "0".."k-1".
pub fn cyclic(order: u32) -> (Vec<String>, Vec<Vec<u32>>) {
    let k = order;
    let names = (0..k).map(|i| i.to_string()).collect();
    let table = (0..k).map(|i| (0..k).map(|j| (i + j) % k).collect()).collect();
    (names, table)
}

/// Dihedral group with k rotations (order 2k). Element r^i·s^f has index
/// i + k·f; names are e, r, r2, ..., s, rs, r2s, ...
pub fn dihedral(k: u32) -> (Vec<String>, Vec<Vec<u32>>) {
    let name = |i: u32, f: u32| -> String {
        let rot = match i {
            0 => String::new(),
            1 => "r".to_string(),
            _ => format!("r{i}"),
        };
        match (rot.is_empty(), f) {
            (true, 0) => "e".to_string(),
            (false, 0) => rot,
            (true, 1) => "s".to_string(),
            _ => format!("{rot}s"),
        }
    };
    let mut names = Vec::new();
    for f in 0..2 {
        for i in 0..k {
            names.push(name(i, f));
        }
    }
    let idx = |i: u32, f: u32| i + k * f;
    let mut table = vec![vec![0u32; (2 * k) as usize]; (2 * k) as usize];
    for i in 0..k {
        for f in 0..2u32 {
            for j in 0..k {
                for g in 0..2u32 {
                    // r^i s^f · r^j s^g = r^(i ± j) s^(f+g)
                    let (ri, rf) = if f == 0 { ((i + j) % k, g) } else { ((k + i - j) % k, 1 - g) };
                    table[idx(i, f) as usize][idx(j, g) as usize] = idx(ri, rf);
                }
            }
        }
    }
    (names, table)
}

/// The eight-element quaternion group {±1, ±i, ±j, ±k}.
/// Index = 2·axis + sign with axes ordered (1, i, j, k).
pub fn quaternion() -> (Vec<String>, Vec<Vec<u32>>) {
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    // basis products: (axis, extra sign)
    let basis = |a1: u32, a2: u32| -> (u32, u32) {
        match (a1, a2) {
            (0, x) => (x, 0),
            (x, 0) => (x, 0),
            (x, y) if x == y => (0, 1),
            (1, 2) => (3, 0),
            (2, 3) => (1, 0),
            (3, 1) => (2, 0),
            (2, 1) => (3, 1),
            (3, 2) => (1, 1),
            (1, 3) => (2, 1),
            _ => unreachable!(),
        }
    };
    let mut table = vec![vec![0u32; 8]; 8];
    for a1 in 0..4 {
        for s1 in 0..2u32 {
            for a2 in 0..4 {
                for s2 in 0..2u32 {
                    let (ax, sg) = basis(a1, a2);
                    table[(2 * a1 + s1) as usize][(2 * a2 + s2) as usize] =
                        2 * ax + ((sg + s1 + s2) % 2);
                }
            }
        }
    }
    (names, table)
}

/// All permutations of {0..n-1} in lexicographic order of their image vectors.
pub fn all_permutations(n: u8) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * n as usize);
        for p in &out {
            for x in 0..n {
                if !p.contains(&x) {
                    let mut q = p.clone();
                    q.push(x);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out.sort();
    out
}
