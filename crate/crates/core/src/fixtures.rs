//! Small worked objects shared across the crate's tests, the acceptance
//! suite, and the command line examples.
//!
//! Everything here is tiny enough to check by hand; the unit tests pin the
//! interesting derived values (kernels, cokernels, reduction cocycles,
//! classification counts) against those hand computations.

use crate::crossed_module::{derive, CrossedModule};
use crate::extension::AbstractZetaKernel;
use crate::group::{Action, FiniteGroup, GroupHom};
use crate::prolongation::{bar_decomposition, PreProlongation};

/// `Z/2 -> Z/2`, identity boundary, trivial action. The terminal example:
/// kernel and cokernel both vanish.
pub fn xm_identity_z2() -> CrossedModule {
    let z2 = FiniteGroup::cyclic(2);
    CrossedModule::new(GroupHom::identity(&z2), Action::trivial(&z2, &z2))
        .expect("identity module")
}

/// `Z/2 -> Z/2`, zero boundary, trivial action. Kernel and cokernel are
/// both the full `Z/2`.
pub fn xm_zero_z2() -> CrossedModule {
    let z2 = FiniteGroup::cyclic(2);
    CrossedModule::new(
        GroupHom::trivial(&z2, &z2),
        Action::trivial(&z2, &z2),
    )
    .expect("zero module")
}

/// `Z/4 -> Z/4`, doubling boundary, trivial action. Kernel and image are
/// both `{0, 2}`; the cokernel has order two.
pub fn xm_double_z4() -> CrossedModule {
    let z4 = FiniteGroup::cyclic(4);
    let double = GroupHom::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).expect("doubling");
    CrossedModule::new(double, Action::trivial(&z4, &z4)).expect("doubling module")
}

/// `Z/4 -> Z/4`, doubling boundary, odd range elements acting by
/// inversion. Same kernel and cokernel as [`xm_double_z4`], but the
/// twist shows up in its reduction cocycle.
pub fn xm_double_z4_twisted() -> CrossedModule {
    let z4 = FiniteGroup::cyclic(4);
    let double = GroupHom::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).expect("doubling");
    let id = vec![0, 1, 2, 3];
    let inv = vec![0, 3, 2, 1];
    let action = Action::new(z4.clone(), z4, vec![id.clone(), inv.clone(), id, inv])
        .expect("inversion action");
    CrossedModule::new(double, action).expect("twisted doubling module")
}

/// The unique ζ-kernel over [`xm_identity_z2`]: the boundary kernel is
/// trivial, so `A` is trivial and ζ is the only map.
pub fn kernel_identity_z2() -> AbstractZetaKernel {
    let xm = xm_identity_z2();
    let derived = derive(&xm);
    let a = FiniteGroup::trivial();
    let zeta = GroupHom::trivial(&derived.kernel, &a);
    AbstractZetaKernel::new(xm, a, zeta).expect("identity kernel")
}

/// The ζ-kernel over [`xm_zero_z2`] with `A = Z/2` and ζ the identity on
/// the full kernel `Z/2`.
pub fn kernel_zero_z2() -> AbstractZetaKernel {
    let xm = xm_zero_z2();
    let derived = derive(&xm);
    let a = FiniteGroup::cyclic(2);
    let zeta = GroupHom::new(derived.kernel.clone(), a.clone(), vec![0, 1]).expect("zeta");
    AbstractZetaKernel::new(xm, a, zeta).expect("zero kernel")
}

/// The ζ-kernel over [`xm_double_z4`] with `A = Z/2` and ζ the
/// isomorphism off the order-two boundary kernel `{0, 2}`.
pub fn kernel_double_z4() -> AbstractZetaKernel {
    let xm = xm_double_z4();
    let derived = derive(&xm);
    let a = FiniteGroup::cyclic(2);
    let zeta = GroupHom::new(derived.kernel.clone(), a.clone(), vec![0, 1]).expect("zeta");
    AbstractZetaKernel::new(xm, a, zeta).expect("doubling kernel")
}

/// Same coefficients as [`kernel_double_z4`], but over the twisted
/// crossed module [`xm_double_z4_twisted`] — the kernel whose obstruction
/// does not vanish.
pub fn kernel_double_z4_twisted() -> AbstractZetaKernel {
    let xm = xm_double_z4_twisted();
    let derived = derive(&xm);
    let a = FiniteGroup::cyclic(2);
    let zeta = GroupHom::new(derived.kernel.clone(), a.clone(), vec![0, 1]).expect("zeta");
    AbstractZetaKernel::new(xm, a, zeta).expect("twisted doubling kernel")
}

/// The pre-prolongation `(B = Z/4, π = mod 2, ζ ≅, η : Z/2 ↪ Z/4,
/// θ trivial)`. Its induced ζ-kernel is exactly [`kernel_double_z4`].
pub fn pre_mod2_z4() -> PreProlongation {
    let (pi, zeta, eta) = pre_mod2_parts();
    let bar = bar_decomposition(&pi, &zeta).expect("bar quotient");
    let theta = Action::trivial(eta.target(), bar.quotient());
    PreProlongation::new(pi, zeta, eta, theta).expect("plain pre-prolongation")
}

/// [`pre_mod2_z4`] with odd elements of `D = Z/4` acting by inversion;
/// the induced ζ-kernel is [`kernel_double_z4_twisted`], so it admits no
/// coverings.
pub fn pre_mod2_z4_twisted() -> PreProlongation {
    let (pi, zeta, eta) = pre_mod2_parts();
    let bar = bar_decomposition(&pi, &zeta).expect("bar quotient");
    let id = vec![0, 1, 2, 3];
    let inv = vec![0, 3, 2, 1];
    let theta = Action::new(
        eta.target().clone(),
        bar.quotient().clone(),
        vec![id.clone(), inv.clone(), id, inv],
    )
    .expect("inversion action");
    PreProlongation::new(pi, zeta, eta, theta).expect("twisted pre-prolongation")
}

fn pre_mod2_parts() -> (GroupHom, GroupHom, GroupHom) {
    let z4 = FiniteGroup::cyclic(4);
    let z2 = FiniteGroup::cyclic(2);
    let pi = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).expect("mod 2");
    let (kernel_group, _) = z4.restrict(&pi.kernel()).expect("kernel subgroup");
    let a = FiniteGroup::cyclic(2);
    let zeta = GroupHom::new(kernel_group, a, vec![0, 1]).expect("zeta");
    let eta = GroupHom::new(z2, z4, vec![0, 2]).expect("eta");
    (pi, zeta, eta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_and_plain_doubling_share_boundaries_but_not_actions() {
        let plain = xm_double_z4();
        let twisted = xm_double_z4_twisted();
        assert_eq!(plain.boundary(), twisted.boundary());
        assert!(plain.action().is_trivial());
        assert_eq!(twisted.act(1, 1), 3);
    }
}
