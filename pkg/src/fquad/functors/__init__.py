"""Functors on Tq evaluated as labeled bases and matrices."""

from .base import (
    ComposedMap,
    Functor,
    NaturalMap,
    SubFunctor,
    Subquotient,
    TensorFunctor,
    ZeroFunctor,
    identity_map,
    natural_check,
    natural_failures,
    tensor_functor,
)
from .basic import (
    ExteriorPower,
    IsoFunctor,
    KdP,
    PFunctor,
    exterior_matrix,
    functor_iota,
    functor_iso,
    functor_kdp,
    functor_lambda,
    functor_p,
    functor_qdp,
    iso_alpha,
    lambda_iso,
    map_f_d,
    map_g_d,
)
from .koszul import (
    KFunctor,
    LFunctor,
    functor_K,
    functor_L,
    map_mu,
    map_mu_n,
    map_nu,
    map_nu_K,
    map_nu_n,
    map_nu_tilde,
    map_sigma_K1,
    wedge_tensor_vector,
)
from .mixed import (
    KdM,
    MFunctor,
    MixAB,
    MixGeneral,
    Sigma,
    functor_head,
    functor_kd_m,
    functor_layer,
    functor_m,
    functor_mix_ab,
    functor_mix_general,
    functor_sigma,
    kdm_generator,
    map_g_i,
    map_head,
    map_i_d,
    map_m_to_mix,
    map_m_to_sigma,
    map_mix_to_m,
    map_norm,
    map_sigma_layer,
    mix_relabel,
    tau_action,
)
from .registry import FunctorParseError, parse_functor
from .values import DefectError, FunctorMap, FunctorValue

__all__ = [name for name in dir() if not name.startswith("_")]
