//! Builds one code of each family and prints its degree profile, rank and
//! girth.
//!
//! `cargo run --example build_codes`

use ldpc_workbench::codes::{
    binary_image, build_gallager, build_ru, fixtures, qc_expand_circulant, qc_expand_tailbiting, random_labeling,
    LinearCode,
};
use ldpc_workbench::gf2::GfField;
use ldpc_workbench::structure::girth;

fn show(name: &str, code: &LinearCode) {
    let g = girth(code).map_or_else(|| "none".to_string(), |g| g.to_string());
    println!(
        "{name:<28} n={:<3} r={:<3} rank={:<3} k={:<3} J,K={:<8} girth={g}",
        code.n(),
        code.r(),
        code.rank(),
        code.k(),
        code.degree_profile().label()
    );
}

fn main() -> ldpc_workbench::Result<()> {
    show("Gallager (3,6) seed 1", &build_gallager(3, 6, 48, 1)?);
    let (ru, regular) = build_ru(3, 6, 48, 1)?;
    show(&format!("RU (3,6) seed 1 regular={regular}"), &ru);

    let q = fixtures::qc48_exponents();
    show("QC tailbiting", &qc_expand_tailbiting(&q)?);
    show("QC circulant", &qc_expand_circulant(&q)?);

    let base = build_gallager(2, 4, 16, 3)?;
    let field = GfField::new(4)?;
    let labeled = random_labeling(base.h(), &field, 3);
    show("GF(16) image of (2,4)", &binary_image(&labeled));

    show("extended QR, sparse form", &fixtures::xqr48());
    Ok(())
}
