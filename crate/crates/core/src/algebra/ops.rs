/// The operations of a (2,1,1,0)-algebra on some element type, so that
/// terms and premorphism checks can run against finite tables, partial
/// bijections and canonical forms alike.
pub trait RestrictionOps {
    type Elem: Clone + Eq + std::fmt::Debug;

    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn star(&self, a: &Self::Elem) -> Self::Elem;
    fn plus(&self, a: &Self::Elem) -> Self::Elem;

    /// Inversion, for algebras that are inverse monoids.
    fn inv(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// The natural partial order, `a = a⁺b`.
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.mul(&self.plus(a), b) == *a
    }

    fn is_projection(&self, a: &Self::Elem) -> bool {
        self.star(a) == *a
    }
}
