//! Polynomials in the simple roots `a1..ar` and the Weyl group action on them.

use crate::cartan::CartanData;
use crate::error::Result;
use crate::poly::{Poly, Rational};
use crate::weyl::{WeylElem, WeylGroup};

/// An element of the symmetric algebra of the root lattice.
pub type RootPoly = Poly;

/// The simple root `alpha_i` as a polynomial (1-based `i`).
pub fn simple_root_poly(cartan: &CartanData, i: usize) -> RootPoly {
    Poly::var(cartan.rank(), i - 1)
}

/// A root-lattice vector as a degree-one polynomial.
pub fn root_poly(coords: &[i64]) -> RootPoly {
    Poly::linear(coords)
}

fn reflection_images(cartan: &CartanData, i: usize) -> Vec<Vec<i64>> {
    (1..=cartan.rank())
        .map(|j| cartan.reflect_root(i, &cartan.simple_root(j)).0)
        .collect()
}

/// `s_i(f)`.
pub fn reflect_poly(cartan: &CartanData, i: usize, f: &RootPoly) -> RootPoly {
    f.substitute_linear(&reflection_images(cartan, i))
}

/// `w(f)`, the ring automorphism extending the action on roots.
pub fn weyl_act_poly(group: &WeylGroup, w: WeylElem, f: &RootPoly) -> RootPoly {
    f.substitute_linear(&group.root_images(w))
}

fn unit_vector(rank: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    v[i - 1] = 1;
    v
}

/// `D_i(f) = (s_i(f) - f) / alpha_i`, the constant produced when commuting `f` past `x_i`.
pub fn twisted_derivative(cartan: &CartanData, i: usize, f: &RootPoly) -> Result<RootPoly> {
    cartan.check_index(i)?;
    let reflected = reflect_poly(cartan, i, f);
    reflected.divided_difference(f, &unit_vector(cartan.rank(), i))
}

/// Both halves of `x_i f = s_i(f) x_i + D_i(f)` from a single reflection.
pub fn commute_generator(cartan: &CartanData, i: usize, f: &RootPoly) -> Result<(RootPoly, RootPoly)> {
    let reflected = reflect_poly(cartan, i, f);
    let d = reflected.divided_difference(f, &unit_vector(cartan.rank(), i))?;
    Ok((reflected, d))
}

/// The divided difference `(f - s_i(f)) / alpha_i`.
pub fn divided_difference_poly(cartan: &CartanData, i: usize, f: &RootPoly) -> Result<RootPoly> {
    cartan.check_index(i)?;
    let reflected = reflect_poly(cartan, i, f);
    f.divided_difference(&reflected, &unit_vector(cartan.rank(), i))
}

/// Constant term: the specialization sending every root to zero.
pub fn specialize_zero(f: &RootPoly) -> Rational {
    f.constant_term()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;
    use crate::weyl::Word;
    use proptest::prelude::*;

    fn a2() -> CartanData {
        CartanData::type_a(2)
    }

    fn a(i: usize) -> RootPoly {
        simple_root_poly(&a2(), i)
    }

    #[test]
    fn weyl_action_examples() {
        let g = WeylGroup::symmetric(3).unwrap();
        let s1 = g.simple(1);
        assert_eq!(weyl_act_poly(&g, s1, &a(1)), -&a(1));
        let img = weyl_act_poly(&g, s1, &(&a(1) * &a(2)));
        assert_eq!(img.to_text("a"), "-a1^2 - a1*a2");
        assert_eq!(weyl_act_poly(&g, g.longest(), &Poly::one(2)), Poly::one(2));
    }

    #[test]
    fn twisted_derivative_examples() {
        let c = a2();
        assert_eq!(twisted_derivative(&c, 1, &a(1)).unwrap(), Poly::constant(2, int(-2)));
        assert_eq!(twisted_derivative(&c, 1, &a(2)).unwrap(), Poly::one(2));
        assert!(twisted_derivative(&c, 1, &Poly::constant(2, int(7))).unwrap().is_zero());
        assert!(twisted_derivative(&c, 3, &a(1)).is_err());
    }

    #[test]
    fn divided_difference_examples() {
        let c = a2();
        assert_eq!(divided_difference_poly(&c, 1, &a(1)).unwrap(), Poly::constant(2, int(2)));
        let f = &a(1) * &a(2);
        // Hand oracle: (a1 a2 + a1 (a1 + a2)) / a1 = a1 + 2 a2.
        assert_eq!(
            divided_difference_poly(&c, 1, &f).unwrap(),
            &a(1) + &a(2).scale(&int(2))
        );
        assert!(divided_difference_poly(&c, 1, &Poly::one(2)).unwrap().is_zero());
    }

    #[test]
    fn specialization_examples() {
        let f = &(&Poly::one(2) + &a(1)) + &(&a(1) * &a(2));
        assert_eq!(specialize_zero(&f), int(1));
        assert_eq!(specialize_zero(&a(2)), int(0));
        assert_eq!(specialize_zero(&Poly::zero(2)), int(0));
    }

    #[test]
    fn weyl_action_matches_word_composition() {
        let g = WeylGroup::new(CartanData::from_label("B2").unwrap()).unwrap();
        let f = &(&simple_root_poly(g.cartan(), 1) * &simple_root_poly(g.cartan(), 1))
            + &simple_root_poly(g.cartan(), 2);
        for w in g.elements() {
            let mut by_word = f.clone();
            for l in g.canonical_word(w).0.iter().rev() {
                by_word = reflect_poly(g.cartan(), *l as usize, &by_word);
            }
            assert_eq!(weyl_act_poly(&g, w, &f), by_word);
        }
        let w = g.from_word(&Word::new([1, 2])).unwrap();
        assert_eq!(g.length(w), 2);
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((prop::collection::vec(0u16..3, nvars), -4i64..5), 0..6).prop_map(
            move |terms| {
                Poly::from_terms(
                    nvars,
                    terms
                        .into_iter()
                        .map(|(e, c)| (crate::poly::Monomial::from_exps(&e), int(c))),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn reflections_are_involutions(f in arb_poly(3), i in 1usize..=3) {
            let c = CartanData::from_label("B3").unwrap();
            prop_assert_eq!(reflect_poly(&c, i, &reflect_poly(&c, i, &f)), f);
        }

        #[test]
        fn divided_difference_squares_to_zero(f in arb_poly(3), i in 1usize..=3) {
            let c = CartanData::from_label("C3").unwrap();
            let once = divided_difference_poly(&c, i, &f).unwrap();
            prop_assert!(divided_difference_poly(&c, i, &once).unwrap().is_zero());
        }

        #[test]
        fn divided_difference_twisted_leibniz(f in arb_poly(2), g in arb_poly(2), i in 1usize..=2) {
            let c = CartanData::from_label("G2").unwrap();
            let lhs = divided_difference_poly(&c, i, &(&f * &g)).unwrap();
            let rhs = &(&divided_difference_poly(&c, i, &f).unwrap() * &g)
                + &(&reflect_poly(&c, i, &f) * &divided_difference_poly(&c, i, &g).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn braid_relation_for_adjacent_type_a(f in arb_poly(3)) {
            let c = CartanData::type_a(3);
            let d = |i: usize, p: &Poly| divided_difference_poly(&c, i, p).unwrap();
            prop_assert_eq!(d(1, &d(2, &d(1, &f))), d(2, &d(1, &d(2, &f))));
        }

        #[test]
        fn degree_is_additive(f in arb_poly(3), g in arb_poly(3)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!((&f * &g).degree(), Some(f.degree().unwrap() + g.degree().unwrap()));
        }

        #[test]
        fn specialization_is_multiplicative(f in arb_poly(2), g in arb_poly(2)) {
            prop_assert_eq!(specialize_zero(&(&f * &g)), specialize_zero(&f) * specialize_zero(&g));
            prop_assert_eq!(specialize_zero(&(&f + &g)), specialize_zero(&f) + specialize_zero(&g));
        }
    }
}
