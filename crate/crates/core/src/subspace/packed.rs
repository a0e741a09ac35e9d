//! Word-packed vector arithmetic. Bit `j` over GF(2), nibble `j` otherwise.

#[inline]
pub(crate) fn entry(v: u64, j: usize, q: u8) -> u8 {
    if q == 2 {
        (v >> j & 1) as u8
    } else {
        (v >> (4 * j) & 0xf) as u8
    }
}

#[inline]
pub(crate) fn pivot_of(v: u64, q: u8) -> usize {
    debug_assert!(v != 0);
    if q == 2 {
        v.trailing_zeros() as usize
    } else {
        v.trailing_zeros() as usize / 4
    }
}

pub(crate) fn pack(coords: &[u8], q: u8) -> u64 {
    coords.iter().enumerate().fold(0, |acc, (j, &c)| {
        if q == 2 {
            acc | (c as u64 & 1) << j
        } else {
            acc | (c as u64) << (4 * j)
        }
    })
}

pub(crate) fn unpack(v: u64, q: u8, n: usize) -> Vec<u8> {
    (0..n).map(|j| entry(v, j, q)).collect()
}

/// `v + c * w`.
#[inline]
pub(crate) fn axpy(v: u64, c: u8, w: u64, q: u8, n: usize) -> u64 {
    if q == 2 {
        return if c & 1 == 1 { v ^ w } else { v };
    }
    let mut out = 0;
    for j in 0..n {
        let x = (entry(v, j, q) as u32 + c as u32 * entry(w, j, q) as u32) % q as u32;
        out |= (x as u64) << (4 * j);
    }
    out
}

pub(crate) fn scale(v: u64, c: u8, q: u8, n: usize) -> u64 {
    axpy(0, c, v, q, n)
}

pub(crate) fn inv_mod(a: u8, q: u8) -> u8 {
    (1..q)
        .find(|&b| (a as u32 * b as u32) % q as u32 == 1)
        .expect("nonzero residue mod a prime")
}
