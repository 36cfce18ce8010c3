#pragma once

// Vectorizable exp / log / inverse normal CDF. One algorithm per function,
// templated over the lane architecture; every lane executes the identical
// IEEE operation sequence, so the scalar and SIMD instantiations agree bit
// for bit (this is what the backend equivalence tests assert).

#include <limits>

#include "heatwave/simd/arch.hpp"

namespace heatwave::simd {

// exp(x) by range reduction x = n*ln2 + r, |r| <= ln2/2, with a degree-13
// Taylor/Horner core. Max error a few ulp. x > 709 saturates to +inf,
// x < -708.39 flushes to zero (subnormal results are not needed here).
template <class A> typename A::VF vexp(typename A::VF x) {
    using VF = typename A::VF;
    const VF log2e = A::set1(1.4426950408889634074);
    const VF ln2_hi = A::set1(6.93147180369123816490e-01);
    const VF ln2_lo = A::set1(1.90821492927058770002e-10);

    typename A::VM too_big = A::gt(x, A::set1(709.0));
    typename A::VM too_small = A::lt(x, A::set1(-708.3964185322641));

    VF n = A::round_nearest(A::mul(x, log2e));
    VF r = A::fma(n, A::neg(ln2_hi), x);
    r = A::fma(n, A::neg(ln2_lo), r);

    // 1/k! for k = 13 .. 2, then the 1 + r*(1 + ...) wrap-up
    VF p = A::set1(1.6059043836821614599e-10);
    p = A::fma(p, r, A::set1(2.0876756987868098979e-09));
    p = A::fma(p, r, A::set1(2.5052108385441718775e-08));
    p = A::fma(p, r, A::set1(2.7557319223985890653e-07));
    p = A::fma(p, r, A::set1(2.7557319223985892510e-06));
    p = A::fma(p, r, A::set1(2.4801587301587301566e-05));
    p = A::fma(p, r, A::set1(1.9841269841269841253e-04));
    p = A::fma(p, r, A::set1(1.3888888888888889419e-03));
    p = A::fma(p, r, A::set1(8.3333333333333332177e-03));
    p = A::fma(p, r, A::set1(4.1666666666666664354e-02));
    p = A::fma(p, r, A::set1(1.6666666666666665741e-01));
    p = A::fma(p, r, A::set1(5.0e-01));
    p = A::fma(p, r, A::set1(1.0));
    p = A::fma(p, r, A::set1(1.0));

    // scale by 2^n through the exponent bits; n is in [-1075, 1023] here
    typename A::VI ni = A::to_int(n);
    typename A::VI ebits = A::template shl<52>(A::iadd(ni, A::iset1(1023)));
    VF scale = A::f64_from_bits(ebits);
    VF res = A::mul(p, scale);

    res = A::select(too_small, A::set1(0.0), res);
    res = A::select(too_big, A::set1(std::numeric_limits<double>::infinity()), res);
    return res;
}

// log(x) for finite normal x > 0 (all this project feeds it). Mantissa
// normalized to [sqrt(2)/2, sqrt(2)), atanh-series core, ~1 ulp.
template <class A> typename A::VF vlog(typename A::VF x) {
    using VF = typename A::VF;
    const std::int64_t mant_mask = 0x000FFFFFFFFFFFFFll;
    const std::int64_t one_bits = 0x3FF0000000000000ll;

    typename A::VI bits = A::bits_of(x);
    typename A::VI e_raw = A::isub(A::template shr<52>(bits), A::iset1(1023));
    VF m = A::f64_from_bits(A::ior(A::iand(bits, A::iset1(mant_mask)), A::iset1(one_bits)));
    VF e = A::to_f64(e_raw);

    typename A::VM over = A::gt(m, A::set1(1.4142135623730951));
    m = A::select(over, A::mul(m, A::set1(0.5)), m);
    e = A::select(over, A::add(e, A::set1(1.0)), e);

    VF s = A::div(A::sub(m, A::set1(1.0)), A::add(m, A::set1(1.0)));
    VF z = A::mul(s, s);
    // atanh series: 1 + z/3 + z^2/5 + ... + z^9/19
    VF q = A::set1(1.0 / 19.0);
    q = A::fma(q, z, A::set1(1.0 / 17.0));
    q = A::fma(q, z, A::set1(1.0 / 15.0));
    q = A::fma(q, z, A::set1(1.0 / 13.0));
    q = A::fma(q, z, A::set1(1.0 / 11.0));
    q = A::fma(q, z, A::set1(1.0 / 9.0));
    q = A::fma(q, z, A::set1(1.0 / 7.0));
    q = A::fma(q, z, A::set1(1.0 / 5.0));
    q = A::fma(q, z, A::set1(1.0 / 3.0));
    q = A::fma(q, z, A::set1(1.0));

    const VF ln2_hi = A::set1(6.93147180369123816490e-01);
    const VF ln2_lo = A::set1(1.90821492927058770002e-10);
    VF t = A::mul(A::add(s, s), q);
    t = A::fma(e, ln2_lo, t);
    return A::fma(e, ln2_hi, t);
}

// Inverse standard normal CDF (Acklam's rational approximation,
// |relative error| < 1.2e-9 over (0,1)). Central and tail branches are both
// evaluated and blended so the lane structure stays uniform.
template <class A> typename A::VF vnormal_icdf(typename A::VF u) {
    using VF = typename A::VF;
    const double plow = 0.02425;

    // central: x = q * P(r) / Q(r), r = q^2, q = u - 1/2
    VF q = A::sub(u, A::set1(0.5));
    VF r = A::mul(q, q);
    VF num = A::set1(-3.969683028665376e+01);
    num = A::fma(num, r, A::set1(2.209460984245205e+02));
    num = A::fma(num, r, A::set1(-2.759285104469687e+02));
    num = A::fma(num, r, A::set1(1.383577518672690e+02));
    num = A::fma(num, r, A::set1(-3.066479806614716e+01));
    num = A::fma(num, r, A::set1(2.506628277459239e+00));
    VF den = A::set1(-5.447609879822406e+01);
    den = A::fma(den, r, A::set1(1.615858368580409e+02));
    den = A::fma(den, r, A::set1(-1.556989798598866e+02));
    den = A::fma(den, r, A::set1(6.680131188771972e+01));
    den = A::fma(den, r, A::set1(-1.328068155288572e+01));
    den = A::fma(den, r, A::set1(1.0));
    VF central = A::div(A::mul(num, q), den);

    // tails: v = min(u, 1-u), w = sqrt(-2 log v)
    VF v = A::min(u, A::sub(A::set1(1.0), u));
    VF w = A::sqrt(A::mul(A::set1(-2.0), vlog<A>(v)));
    VF tn = A::set1(-7.784894002430293e-03);
    tn = A::fma(tn, w, A::set1(-3.223964580411365e-01));
    tn = A::fma(tn, w, A::set1(-2.400758277161838e+00));
    tn = A::fma(tn, w, A::set1(-2.549732539343734e+00));
    tn = A::fma(tn, w, A::set1(4.374664141464968e+00));
    tn = A::fma(tn, w, A::set1(2.938163982698783e+00));
    VF td = A::set1(7.784695709041462e-03);
    td = A::fma(td, w, A::set1(3.224671290700398e-01));
    td = A::fma(td, w, A::set1(2.445134137142996e+00));
    td = A::fma(td, w, A::set1(3.754408661907416e+00));
    td = A::fma(td, w, A::set1(1.0));
    VF tail = A::div(tn, td); // value for the lower tail
    // upper tail mirrors
    tail = A::select(A::gt(u, A::set1(0.5)), A::neg(tail), tail);

    typename A::VM in_tail =
        A::mor(A::lt(u, A::set1(plow)), A::gt(u, A::set1(1.0 - plow)));
    return A::select(in_tail, tail, central);
}

} // namespace heatwave::simd
