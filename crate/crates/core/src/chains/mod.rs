//! Polar chains, their normalization, boundary and homology data.

mod boundary;
mod chain;
mod homology;
mod normalize;

pub use boundary::{boundary, boundary_squared, hp0_class, reduce_relative, RelativeContext};
pub use chain::{hyperplane_domain, render_variety, PolarChain, PrimeChain};
pub use homology::{hp_report, HomologyReport};
pub use normalize::{normalize, point_form};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, MultiPoly, RationalFunction, Symbol, TauScalar};
    use crate::forms::{DifferentialForm, PoleComponent};
    use crate::spaces::{AmbientPoint, AmbientSpace, Chart};

    fn inv(p: MultiPoly) -> RationalFunction {
        RationalFunction::new(MultiPoly::one(), p).unwrap()
    }

    fn c(n: i64) -> MultiPoly {
        MultiPoly::int(n)
    }

    fn line_point(v: i64) -> AmbientPoint {
        AmbientPoint::new(vec![vec![TauScalar::one(), TauScalar::from(v)]]).unwrap()
    }

    #[test]
    fn two_pole_boundary() {
        let p1 = AmbientSpace::projective(1).unwrap();
        let o = Chart::origin(&p1);
        let z = MultiPoly::var_str("z");
        let a = TauScalar::from(3);
        let (zp, zq) = (z.sub(&c(1)), z.sub(&c(2)));
        let g = inv(zp.clone()).sub(&inv(zq.clone())).mul(&RationalFunction::constant(a.clone()));
        let poles = vec![PoleComponent::from_local(&p1, &o, &zp).unwrap(), PoleComponent::from_local(&p1, &o, &zq).unwrap()];
        let chain = PolarChain::single(PrimeChain::whole(DifferentialForm::top(&p1, g, poles)).unwrap());
        let d = boundary(&chain).unwrap();
        let tau = TauScalar::tau();
        let expected = PolarChain::from_terms(
            &p1,
            vec![
                PrimeChain::point(&p1, &line_point(1), a.mul(&tau)).unwrap(),
                PrimeChain::point(&p1, &line_point(2), a.mul(&tau).neg()).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(d, normalize(&expected).unwrap());
        assert_eq!(d.render(), "(2πi)*[(point(1),3) - (point(2),3)]");
        assert!(hp0_class(&d).unwrap().is_zero());
    }

    #[test]
    fn square_boundary_squared() {
        let m = AmbientSpace::product_of_lines(2).unwrap();
        let o = Chart::origin(&m);
        let (x, y) = (MultiPoly::var_str("x"), MultiPoly::var_str("y"));
        let poles = vec![
            PoleComponent::from_local(&m, &o, &x).unwrap(),
            PoleComponent::from_local(&m, &o, &y).unwrap(),
            PoleComponent::infinity(&m, &Symbol::new("x")).unwrap(),
            PoleComponent::infinity(&m, &Symbol::new("y")).unwrap(),
        ];
        let chain = PolarChain::single(PrimeChain::whole(DifferentialForm::top(&m, inv(x.mul(&y)), poles)).unwrap());
        let d = boundary(&chain).unwrap();
        assert_eq!(d.terms.len(), 4);
        assert!(boundary(&d).unwrap().is_empty(), "{}", boundary(&d).unwrap());
    }

    #[test]
    fn plane_three_lines() {
        let p2 = AmbientSpace::projective(2).unwrap();
        let o = Chart::origin(&p2);
        let (x, y) = (MultiPoly::var_str("x"), MultiPoly::var_str("y"));
        let l = x.add(&y).sub(&c(1));
        let poles = [&x, &y, &l].iter().map(|h| PoleComponent::from_local(&p2, &o, h).unwrap()).collect();
        let chain = PolarChain::single(PrimeChain::whole(DifferentialForm::top(&p2, inv(x.mul(&y).mul(&l)), poles)).unwrap());
        let d = boundary(&chain).unwrap();
        assert_eq!(d.terms.len(), 3);
        assert!(boundary_squared(&chain).unwrap().is_empty());
    }

    #[test]
    fn relative_cycle() {
        let p1 = AmbientSpace::projective(1).unwrap();
        let o = Chart::origin(&p1);
        let z = MultiPoly::var_str("z");
        let poles = vec![PoleComponent::from_local(&p1, &o, &z).unwrap(), PoleComponent::infinity(&p1, &Symbol::new("z")).unwrap()];
        let chain = PolarChain::single(PrimeChain::whole(DifferentialForm::top(&p1, inv(z), poles)).unwrap());
        let d = boundary(&chain).unwrap();
        assert_eq!(d.terms.len(), 2);
        let zero_inf = vec![vec![MultiPoly::var_str("#0.1")], vec![MultiPoly::var_str("#0.0")]];
        let ctx = RelativeContext::new(&p1, zero_inf).unwrap();
        assert!(reduce_relative(&d, &ctx).unwrap().is_empty());
        let two = RelativeContext::new(&p1, vec![vec![MultiPoly::var_str("#0.1").sub(&MultiPoly::var_str("#0.0").scale(&TauScalar::from(2)))]]).unwrap();
        assert_eq!(reduce_relative(&d, &two).unwrap().terms.len(), 2);
    }

    #[test]
    fn cover_normalizes_to_identity() {
        let p1 = AmbientSpace::projective(1).unwrap();
        let t = Symbol::new("t");
        let tv = RationalFunction::var(&t);
        let assign = [(Symbol::new("z"), tv.mul(&tv))].into_iter().collect();
        let local = crate::forms::ExteriorForm::top(vec![t.clone()], tv.inv().unwrap());
        let sq = PrimeChain::graph(&p1, &Chart::origin(&p1), &[t], &assign, local, None).unwrap();
        let n = normalize(&PolarChain::single(sq)).unwrap();
        assert_eq!(n.render(), "(whole,1/z*dz)");
    }
}
