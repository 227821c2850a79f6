//! Arithmetic in ℚ, 𝔽_p and 𝔽_q, and factorization of polynomials.

use coalg_kernel::field::{FactorConfig, Field, Poly};

fn main() -> coalg_kernel::Result<()> {
    let q = Field::rationals();
    let a = q.parse("3/4")?;
    let b = q.parse("-5/6")?;
    println!("in {q}: (3/4)·(-5/6) = {}", q.format(&q.mul(&a, &b)));

    let f7 = Field::prime(7)?;
    let three = f7.parse("3")?;
    println!("in {f7}: 3⁻¹ = {}", f7.format(&f7.inv(&three)?));

    // 𝔽_9 = 𝔽_3[x]/(x² + 1)
    let f9 = Field::extension(3, vec![1, 0, 1])?;
    let x = f9.generator();
    println!("in {f9}: x² = {}, x⁴ = {}", f9.format(&f9.pow(&x, 2)), f9.format(&f9.pow(&x, 4)));

    let cfg = FactorConfig::default();
    for k in [Field::prime(2)?, Field::rationals()] {
        // x⁴ − 1
        let p = Poly::from_i64s(&k, &[-1, 0, 0, 0, 1]);
        let factors: Vec<String> = p.factor(&cfg)?.factors.iter().map(|(f, e)| format!("({f})^{e}")).collect();
        println!("over {k}: {p} = {}", factors.join(" "));
    }
    Ok(())
}
