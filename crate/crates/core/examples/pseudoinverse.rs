//! Moore-Penrose pseudoinverse and the minimum-norm least-squares solve.

use logistic_elm::{lstsq_min_norm, pinv, Matrix};

fn main() -> logistic_elm::Result<()> {
    // rank 2: the third row is the sum of the first two
    let a = Matrix::from_rows(&[
        vec![1.0, 2.0, 0.0],
        vec![0.0, 1.0, 1.0],
        vec![1.0, 3.0, 1.0],
        vec![2.0, 0.0, -1.0],
    ])?;
    let p = pinv(&a, None)?;
    println!("pinv(A) =");
    for row in p.row_iter() {
        println!(
            "  {:?}",
            row.iter().map(|v| format!("{v:+.5}")).collect::<Vec<_>>()
        );
    }

    let apa = a.matmul(&p)?.matmul(&a)?;
    let pap = p.matmul(&a)?.matmul(&p)?;
    let ap = a.matmul(&p)?;
    let pa = p.matmul(&a)?;
    println!("|A P A - A|     = {:.2e}", apa.sub(&a)?.frobenius_norm());
    println!("|P A P - P|     = {:.2e}", pap.sub(&p)?.frobenius_norm());
    println!(
        "|(A P)' - A P|  = {:.2e}",
        ap.transpose().sub(&ap)?.frobenius_norm()
    );
    println!(
        "|(P A)' - P A|  = {:.2e}",
        pa.transpose().sub(&pa)?.frobenius_norm()
    );

    let b = Matrix::from_rows(&[vec![1.0], vec![2.0], vec![3.0], vec![0.0]])?;
    let x = lstsq_min_norm(&a, &b)?;
    println!("\nminimum-norm x for A x ~ b: {:?}", x.as_slice());
    println!(
        "residual |A x - b| = {:.5}",
        a.matmul(&x)?.sub(&b)?.frobenius_norm()
    );
    Ok(())
}
