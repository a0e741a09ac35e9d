//! Shared fixtures for the benchmarks.

use qmat_core::{ExtField, Matrix, QMatroid};

pub fn uniform(k: usize, n: usize) -> QMatroid {
    QMatroid::uniform(2, k, n).expect("small uniform")
}

/// U_{1,2} stacked on itself `times` times, on F_2^{2 times}.
pub fn stacked_u12(times: usize) -> QMatroid {
    let u = uniform(1, 2);
    (1..times).fold(u.clone(), |acc, _| {
        qmat_core::free_product(&acc, &u).expect("same field")
    })
}

/// A rank-table copy, so scans cannot use a certificate.
pub fn as_table(m: &QMatroid) -> QMatroid {
    m.to_table(qmat_core::Budget::DEFAULT)
        .expect("within budget")
}

/// The 2 x 5 system over GF(128) whose linear set is a 2-club.
pub fn club_system() -> (ExtField, Matrix) {
    let f = ExtField::gf128();
    let rows = [
        ["1", "a", "0", "a^36", "a^24"],
        ["0", "0", "1", "a^2", "a^8"],
    ]
    .iter()
    .map(|r| {
        r.iter()
            .map(|s| f.parse_element(s).expect("valid entry"))
            .collect()
    })
    .collect();
    let g = Matrix::from_rows(rows).expect("uniform width");
    (f, g)
}
