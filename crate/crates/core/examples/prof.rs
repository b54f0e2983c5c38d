use std::time::Instant;
use tamagawa_core::{bung::*, rootsys::*, zeta::CurveZeta};
fn main() {
    let ctx = BunGContext::new(
        GroupInvariants::for_label("A2".parse().unwrap()),
        CurveZeta::projective_line(3).unwrap(),
    )
    .unwrap();
    let t = Instant::now();
    let d = max_feasible_point_degree(&ctx, 12);
    println!("feasible {d} {:?}", t.elapsed());
    let e = euler_product_partial(&ctx, d).unwrap();
    println!("product {:?} bits {}", t.elapsed(), e.value.numer().bits());
    let ok = e.brackets(&trace_total(&ctx));
    println!("brackets {ok} {:?}", t.elapsed());
    let s = e.value.to_string();
    println!("to_string {} {:?}", s.len(), t.elapsed());
}
