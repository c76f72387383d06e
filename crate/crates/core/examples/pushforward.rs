//! Trace push-forward along z ↦ z², z³ and (z²+1)/z, with the residue check.

use polaris::algebra::{Field, MultiPoly, RationalFunction, Symbol, TauScalar};
use polaris::forms::{DifferentialForm, ExteriorForm};
use polaris::pushforward::{check_residue_commute, pushforward, LineMap};
use polaris::spaces::{AmbientPoint, AmbientSpace, Chart};

fn main() -> polaris::Result<()> {
    let p1 = AmbientSpace::projective(1)?;
    let z = RationalFunction::var(&Symbol::new("z"));
    let maps = [("z^2", z.mul(&z)), ("z^3", z.mul(&z).mul(&z)), ("(z^2+1)/z", z.mul(&z).add(&RationalFunction::one()).div(&z).unwrap())];
    let g = RationalFunction::new(MultiPoly::var_str("z"), MultiPoly::var_str("z").pow(2).sub(&MultiPoly::int(4))).unwrap();
    let w = DifferentialForm::with_inferred_poles(&p1, Chart::origin(&p1), ExteriorForm::top(p1.origin_coords(), g))?;
    let two = AmbientPoint::new(vec![vec![TauScalar::one(), TauScalar::from(2)]]).unwrap();
    println!("form {}", w.render());
    for (name, f) in maps {
        let f = LineMap::new(&p1, f)?;
        let pushed = pushforward(&f, &w)?;
        let rep = check_residue_commute(&f, &w, &two)?;
        println!("{name:>10}: {}", pushed.render());
        println!("{:>10}  residue at {}: {} = {} ({})", "", rep.image.render(), rep.pushed_residue.render().0, rep.residue_pushed.render().0, rep.equal);
    }
    Ok(())
}
