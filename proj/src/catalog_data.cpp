#include "superjet/catalog.hpp"

namespace superjet {

namespace {

const char* skdv = R"(
field f odd susy 1 weight 3/2;
field chi odd susy 1 weight 3/2;
param eps weight -1;
time weight -3;
f_t = f_xxx + 3*Dx(f*Df);
flow translation_x: f = f_x;
flow self: f = f_xxx + 3*Dx(f*Df);
density f image Dx: f;
density gardner_2 image D: f*Df + f_xx;
density gardner_3 image D: -2*f*Df_x - 2*Df*f_x - f_xxx;
density gardner_4 image D: 2*f*Df^2 + 3*f*Df_xx + 3*Df*f_xx + 5*f_x*Df_x + f_xxxx;
extended chi_t = chi_xxx + 3*Dx(chi*Dchi) - 1/2*eps^2*D(Dchi^3) - 3/2*eps^2*Dx(chi*Dchi^2);
miura eps: f = chi + eps*chi_x - eps^2*chi*Dchi;
expansion f: f, -f_x, f*Df + f_xx, -2*f*Df_x - 2*Df*f_x - f_xxx,
    2*f*Df^2 + 3*f*Df_xx + 3*Df*f_xx + 5*f_x*Df_x + f_xxxx;
)";

const char* pskdv = R"(
field b even susy 1 weight 1;
time weight -3;
b_t = b_xxx + 3*D(b_x*Db);
flow translation_x: b = b_x;
flow self: b = b_xxx + 3*D(b_x*Db);
density rho1 image D: b;
density rho2 image D: 1/2*b^2;
)";

const char* skdv_a = R"(
field f odd susy 1 weight 3/2;
time weight -3;
f_t = f_xxx + f_x*Df;
nonlocal v even weight 1: D(v) = f;
nonlocal w odd weight 7/2: D(w) = Df^2;
flow translation_x: f = f_x;
flow self: f = f_xxx + f_x*Df;
shadow R: f = Df*F + 3*F_xx + f_x*V + 1/2*W;
maps R: translation_x -> self;
)";

const char* skdv_b = R"(
field f odd susy 1 weight 3/2;
param alpha weight 0;
param beta weight 0;
time weight -3;
f_t = alpha*f*Df_x + beta*f_x*Df;
nonlocal v even weight 1: D(v) = f;
nonlocal w even weight 3: D(w) = f*Df;
flow translation_x: f = f_x;
flow self: f = alpha*f*Df_x + beta*f_x*Df;
shadow R: f = alpha*f*Df*DF + alpha*f*f_x*F - alpha*f*Df_x*V - beta*f_x*Df*V + beta*f_x*W;
refuted shadow R_printed: f = alpha*(Df_x*f*V - f*Df*DF + f_x*f*F) + beta*(f*Df*V - f_x*W);
flow next_t: f = 3*alpha*(alpha + beta)*f*Df^2*Df_x + (alpha + beta)*beta*Df^3*f_x;
maps R: self -> next_t;
)";

const char* skdv_c = R"(
field f odd susy 1 weight 3/2;
time weight -3;
f_t = D(f_x*f);
nonlocal v even weight 1: D(v) = f;
flow translation_x: f = f_x;
flow self: f = D(f_x*f);
shadow R: f = f*DF - f_x*V;
)";

std::string quad(const char* alpha) {
    return std::string(R"(
field f odd susy 1 weight 1/2;
field b even susy 1 weight 1/2;
time weight -1/2;
f_t = -)") + alpha + R"(*f*b;
b_t = b^2 + Df;
flow translation_x: f = f_x, b = b_x;
flow self: f = -)" + alpha + R"(*f*b, b = b^2 + Df;
)";
}

const char* double_layer = R"(
field f odd susy 1 weight 1/2;
field b even susy 1 weight 1/2;
time weight -1/2;
f_t = Db + f*b;
b_t = Df;
flow translation_x: f = f_x, b = b_x;
flow self: f = Db + f*b, b = Df;
)";

const char* burgers_repr = R"(
field f odd susy 1 weight 1/2;
field b even susy 1 weight 1/2;
time weight -1/2;
f_t = Db;
b_t = b^2 + Df;
nonlocal w even weight 0: D(w) = -f, w_t = -b;
flow translation_x: f = f_x, b = b_x;
flow self: f = Db, b = b^2 + Df;
flow next_x: f = f_xx - 2*Df*f_x, b = b_xx - 2*Df*b_x;
flow next_t: f = Db_x - Df*Db - f_x*b, b = Df_x - Df^2 - b^2*Df + b*b_x;
flow odd_seed odd: f = Df, b = Db;
flow odd_next odd: f = Df_x - Df^2 - f_x*f, b = Db_x - Df*Db - b_x*f;
flow odd_seed_second odd: f = f*Db - b*Df + b_x, b = b*Db - f*Df + f_x - f*b^2;
shadow R: f = F_x - Df*F + f_x*W, b = B_x - Df*B + b_x*W;
maps R: translation_x -> next_x;
maps R: self -> next_t;
maps R: odd_seed -> odd_next;
)";

const char* superburg = R"(
field f odd susy 0 weight 1;
field b even susy 0 weight 1;
param alpha weight 0;
time weight -2;
f_t = f_xx + Dx(b*f);
b_t = b_xx + b*b_x + alpha*f_x*f;
nonlocal w odd weight 0: w_x = f, w_t = f_x + b*f;
nonlocal vt even weight 0: vt_x = b + 1/2*alpha*f*w, vt_t = b_x + 1/2*b^2 + 1/2*alpha*f_x*w + 1/2*alpha*f*b*w;
flow translation_x: f = f_x, b = b_x;
flow self: f = f_xx + Dx(b*f), b = b_xx + b*b_x + alpha*f_x*f;
density f image Dx: f;
claim potential_w: w_t = w_xx + vt_x*w_x;
claim potential_vt: vt_t = vt_xx + 1/2*vt_x^2;
shadow R1: f = b_x*W + 2*F_x + f_x*VT + 1/2*alpha*f_x*w*W + b*F + f*B,
           b = 2*B_x + b*B + b_x*VT + 1/2*alpha*b_x*w*W + alpha*f_x*W - alpha*f*F;
refuted shadow R2_printed: f = -w*B_x - 1/2*b_x*w*VT + 1/2*alpha*f_x*w*W - 1/4*alpha*w*f*b*W - 1/2*alpha*w*f*F - 1/2*w*b*B
               - 1/2*f*b*VT - f*B,
           b = 2*B_x + b*B + b_x*VT - alpha*w*F_x + alpha*f_x*W + 1/2*f_x*w*VT + 1/2*alpha*f*b*W
               - 1/2*alpha*w*b*F - 1/2*alpha*w*f*b*VT - 3/2*alpha*w*f*B;
shadow R2: f = -w*B_x - 1/2*b_x*w*VT + 1/2*alpha*f_x*w*W - 1/4*alpha*w*f*b*W - 1/2*alpha*w*f*F - 1/2*w*b*B
               - 1/2*f*b*VT - f*B,
           b = 2*B_x + b*B + b_x*VT - alpha*w*F_x + alpha*f_x*W + 1/2*alpha*f_x*w*VT + 1/2*alpha*f*b*W
               - 1/2*alpha*w*b*F - 1/2*alpha*w*f*b*VT - 3/2*alpha*w*f*B;
)";

const char* superburg_0 = R"(
field f odd susy 0 weight 3/2;
field b even susy 0 weight 1;
time weight -2;
f_t = f_xx + Dx(b*f);
b_t = b_xx + b*b_x;
nonlocal w odd weight 1/2: w_x = f, w_t = f_x + b*f;
nonlocal v even weight 0: v_x = b, v_t = b_x + 1/2*b^2;
flow translation_x: f = f_x, b = b_x;
flow self: f = f_xx + Dx(b*f), b = b_xx + b*b_x;
claim potential_w: w_t = w_xx + v_x*w_x;
claim potential_v: v_t = v_xx + 1/2*v_x^2;
shadow R1: f = -1/2*w*B_x + 1/2*b_x*W - 1/4*b_x*w*V + F_x + 1/2*f_x*V + 1/2*b*F - 1/4*w*b*B - 1/4*f*b*V,
           b = 2*B_x + b*B + b_x*V;
shadow R2: f = w*B_x + b_x*W + 1/2*b_x*w*V + 2*F_x + f_x*V + b*F + 1/2*w*b*B + 1/2*f*b*V + 2*f*B,
           b = 0;
)";

const char* n2burgers = R"(
field b even susy 2 weight 1;
time weight -2;
b_t = D1D2b_x + b*b_x;
flow translation_x: b = b_x;
flow self: b = D1D2b_x + b*b_x;
flow skdv4: b = -b_xxx + 3/2*Dx(b*D1D2b) + 3/4*Dx(D1b*D2b) + 3/4*b^2*b_x;
refuted flow skdv4_printed: b = -b_xxx + 1/2*Dx(b*D1D2b) + 3/4*Dx(D1b*D2b) + 3/4*b^2*b_x;
commute self skdv4;
refuted commute self skdv4_printed;
)";

const char* skdv4 = R"(
field b even susy 2 weight 1;
time weight -3;
b_t = -b_xxx + 3/2*Dx(b*D1D2b) + 3/4*Dx(D1b*D2b) + 3/4*b^2*b_x;
flow translation_x: b = b_x;
flow self: b = -b_xxx + 3/2*Dx(b*D1D2b) + 3/4*Dx(D1b*D2b) + 3/4*b^2*b_x;
flow burgers: b = D1D2b_x + b*b_x;
)";

const char* dbous = R"(
field f odd susy 1 weight 1;
field b even susy 1 weight 1;
time weight -3/2;
f_t = b*Db;
b_t = Df_x;
nonlocal w even weight 1/2: D(w) = f, w_t = 1/2*b^2;
nonlocal v even weight 0: v_x = b, v_t = Df;
operator right (0, D; -D, 0);
flow translation_x: f = f_x, b = b_x;
flow self: f = b*Db, b = Df_x;
flow next_x: f = Db*b^2 + Df*f_x, b = Df_x*b + Df*b_x;
flow next_t: f = Df*Db*b + 1/2*f_x*b^2, b = Df_x*Df + 1/2*b_x*b^2;
flow zero standalone: f = 0, b = 0;
density casimir_b image Dx: b;
density casimir_Df image Dx: Df;
density H1_1 image Dx: b*Df;
density H2_1 image Dx: 1/12*b^4 + 1/2*b*Df^2;
density H1_2 image Dx: 1/2*Df^2 + 1/6*b^3;
density H2_2 image Dx: 1/6*Df^3 + 1/6*b^3*Df;
generates casimir_b -> zero;
generates casimir_Df -> zero;
generates H1_1 -> translation_x;
generates H1_2 -> self;
generates H2_1 -> next_x;
generates H2_2 -> next_t;
shadow R: f = Db*b*V + 1/2*b^2*DV + 3/4*Df*F + 3/4*f_x*W,
          b = Df_x*V + 1/2*b*DF + 3/4*Df*B + 3/4*b_x*W;
maps R: translation_x -> next_x;
maps R: self -> next_t;
)";

const char* hydro_bous = R"(
field b even susy 0 weight 2;
field c even susy 0 weight 3;
field w1 even susy 0 weight 2;
field w2 even susy 0 weight 3;
param eps weight -3;
time weight -2;
b_t = c_x;
c_t = b*b_x;
operator (0, Dx; Dx, 0);
flow translation_x: b = b_x, c = c_x;
flow self: b = c_x, c = b*b_x;
density H image Dx: 1/6*b^3 + 1/2*c^2;
density b_1 image Dx: -b*c;
density b_2 image Dx: 2*b*c^2 + 1/3*b^4;
density c_1 image Dx: -c^2 - 1/3*b^3;
density c_2 image Dx: 5/3*c^3 + 5/3*b^3*c;
generates H -> self;
extended w1_t = w2_x + eps*w2*w2_x;
extended w2_t = w1*w1_x;
miura eps: b = w1 + eps*w1*w2, c = w2 + 1/3*eps*w1^3 + eps*w2^2 + 1/3*eps^2*w2^3;
pin 1 b: w1*w2 = 1;
pin 2 b: w1*w2^2 = 0;
expansion b: b, -b*c, 2*b*c^2 + 1/3*b^4;
expansion c: c, -c^2 - 1/3*b^3, 5/3*c^3 + 5/3*b^3*c;
)";

const char* bous_alpha = R"(
field f odd susy 1 weight 5/2;
field b even susy 1 weight 2;
param alpha weight 0;
time weight -2;
f_t = b*Db + Db_xx - alpha*f_xx;
b_t = Df_x + alpha*b_xx;
flow translation_x: f = f_x, b = b_x;
flow self: f = b*Db + Db_xx - alpha*f_xx, b = Df_x + alpha*b_xx;
)";

const char* bous_alpha_even = R"(
field c even susy 0 weight 3;
field b even susy 0 weight 2;
param alpha weight 0;
time weight -2;
c_t = b*b_x + b_xxx - alpha*c_xx;
b_t = c_x + alpha*b_xx;
flow translation_x: c = c_x, b = b_x;
flow self: c = b*b_x + b_xxx - alpha*c_xx, b = c_x + alpha*b_xx;
)";

const char* bous_embed = R"(
field f odd susy 1 weight 5/2;
field b even susy 1 weight 2;
param alpha weight 0;
param beta weight 0;
param gamma weight 0;
time weight -2;
f_t = alpha*beta*f*b - alpha*gamma*b*Db - gamma^2*Db_xx - beta*gamma*f_xx;
b_t = alpha*beta*b^2 + beta^2*Df_x + beta*gamma*b_xx;
flow translation_x: f = f_x, b = b_x;
flow even_weight_4:
    f = -Db*b_xx*gamma^3 + Db_x*b_x*gamma^3 + Db_x*Df*beta*gamma^2 - Df_x*Db*beta*gamma^2 - Df_x*f*beta^2*gamma
        + Df*f_x*beta^2*gamma - b_xx*f*beta*gamma^2 + b_x*f_x*beta*gamma^2,
    b = -Db*f_x*beta^2*gamma + Db_x*f*beta^2*gamma + Db_x*Db*beta*gamma^2 + f_x*f*beta^3;
flow odd_weight_7_2 odd:
    f = Db*f_x*beta*gamma^2 - Db_x*f*beta*gamma^2 - Db_x*Db*gamma^3 - b_x^2*gamma^3 - Df^2*beta^2*gamma
        - f_x*f*beta^2*gamma - 2*Df*b_x*beta*gamma^2,
    b = Db*b_x*beta*gamma^2 + Df*Db*beta^2*gamma + Df*f*beta^3 + b_x*f*beta^2*gamma;
refuted flow odd_weight_7_2_printed odd:
    f = Db*f_x*beta*gamma^2 - Db_x*f*beta*gamma^2 - Db_x*Db*gamma^3 - b_x^2*gamma^3 - Df^2*beta^2*gamma
        - f_x*f*beta^2*gamma - 2*Df*b_x*beta*gamma^2,
    b = Db*b_x*beta*gamma^2 + Df*Db*beta^2*gamma + Df*f*beta^2*gamma + b_x*f*beta^2*gamma;
)";

const char* hospital_1 = R"(
field f odd susy 1 weight 1/2;
field b even susy 1 weight 1/2;
fn Q of b;
time weight -1;
f_t = b*Db + f*Df;
b_t = f*Db;
flow translation_x: f = f_x, b = b_x;
flow self: f = b*Db + f*Df, b = f*Db;
flow recurrence_Q: f = b*Q(b)*Db + f*Q(b)*Df, b = f*Q(b)*Db;
shadow R1: f = Db*b*B - Db*f*F + Df*f*B, b = -Db*f*B;
shadow R2: f = b_x*b*F + f_x*b*B, b = b_x*b*B;
shadow R3: f = Db*b_x*b*B - Db*b_x*f*F + Db*f_x*f*B + Df*b_x*f*B, b = -Db*b_x*f*B;
refuted shadow R1_printed: f = Db*b*B + Db*f*F - Df*f*B, b = Db*f*B;
refuted shadow R3_printed: f = Db*b_x*b*B + Db*b_x*f*F - Db*f_x*f*B - Df*b_x*f*B, b = Db*b_x*f*B;
shadow b2_R1: f = b^2*(Db*b*B - Db*f*F + Df*f*B), b = -b^2*Db*f*B;
nilpotent R1 order 2;
nilpotent R3 order 2;
refuted nilpotent R1 order 4;
refuted nilpotent R3 order 4;
)";

const char* hospital_alpha = R"(
field f odd susy 1 weight 1/2;
field b even susy 1 weight 1/2;
param alpha weight 0;
fn Q of b;
fn S of b;
time weight -1;
f_t = b*Db + f*Df;
b_t = alpha*f*Db;
flow translation_x: f = f_x, b = b_x;
flow self: f = b*Db + f*Df, b = alpha*f*Db;
flow recurrence_Q: f = b*Q(b)*Db + f*Q(b)*Df, b = alpha*f*Q(b)*Db;
flow recurrence_S: f = b*S(b)*Db + f*S(b)*Df, b = alpha*f*S(b)*Db;
commute recurrence_Q recurrence_S;
commute self recurrence_Q;
)";

const char* commuting_functional = R"(
field f odd susy 1 weight 1/2;
field b even susy 1 weight 1/2;
param alpha weight 0;
param beta weight 0;
param gamma weight 0;
param delta weight 0;
fn Q of b;
fn S of b;
flow tau standalone: f = alpha*f_x*Q(b) + gamma*b_x*f*Q'(b) + delta*f*b^2*Q'(b), b = alpha*b_x*Q(b) + beta*f_x*f*Q'(b);
flow sigma standalone: f = alpha*f_x*S(b) + gamma*b_x*f*S'(b) + delta*f*b^2*S'(b), b = alpha*b_x*S(b) + beta*f_x*f*S'(b);
commute tau sigma;
)";

std::vector<CatalogEntry> build() {
    return {
        {"skdv", "N=1 super-KdV equation with its Gardner deformation", skdv},
        {"pskdv", "potential N=1 super-KdV equation", pskdv},
        {"skdv-a", "KdV analogue f_t = f_xxx + f_x Df", skdv_a},
        {"skdv-b", "two-parameter dispersionless KdV analogue", skdv_b},
        {"skdv-c", "continuity relation f_t = D(f_x f)", skdv_c},
        {"quad-1", "quadratic system f_t = -f b, b_t = b^2 + Df", quad("1")},
        {"quad-2", "quadratic system f_t = -2 f b, b_t = b^2 + Df", quad("2")},
        {"quad-4", "quadratic system f_t = -4 f b, b_t = b^2 + Df", quad("4")},
        {"double-layer", "system f_t = Db + f b, b_t = Df", double_layer},
        {"burgers-repr", "super-field representation of the Burgers equation", burgers_repr},
        {"superburg", "fermionic extension of the Burgers equation with coupling alpha", superburg},
        {"superburg-0", "fermionic extension of the Burgers equation without coupling", superburg_0},
        {"n2burgers", "N=2 supersymmetric Burgers equation", n2burgers},
        {"skdv4", "N=2 supersymmetric SKdV4 equation", skdv4},
        {"dbous", "super-field dispersionless Boussinesq system", dbous},
        {"hydro-bous", "hydrodynamic dispersionless Boussinesq system and its Gardner deformation", hydro_bous},
        {"bous-alpha", "super-field Boussinesq system with dissipation", bous_alpha},
        {"bous-alpha-even", "bosonic Boussinesq system with dissipation", bous_alpha_even},
        {"bous-embed", "multi-parameter Boussinesq-type system", bous_embed},
        {"hospital-1", "system f_t = b Db + f Df, b_t = f Db with zero-order recursions", hospital_1},
        {"hospital-alpha", "family f_t = b Db + f Df, b_t = alpha f Db with a recurrence relation", hospital_alpha},
        {"commuting-functional", "commuting flows with a free function of b", commuting_functional},
    };
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build();
    return entries;
}

}  // namespace superjet
