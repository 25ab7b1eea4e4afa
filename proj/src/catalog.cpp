#include "cdloop/catalog.hpp"

#include <algorithm>
#include <array>

namespace cdloop {

LoopTable cyclic_group(int m) {
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    std::vector<std::string> names(m);
    for (int i = 0; i < m; i++) {
        names[i] = i == 0 ? "1" : (i == 1 ? "g" : "g^" + std::to_string(i));
        for (int j = 0; j < m; j++) t[i][j] = (i + j) % m;
    }
    return LoopTable::validate(t, std::move(names));
}

LoopTable elementary_abelian(int k) {
    const int n = 1 << k;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> names(n);
    for (int i = 0; i < n; i++) {
        if (i == 0) {
            names[i] = "1";
        } else {
            for (int b = 0; b < k; b++)
                if (i & (1 << b)) names[i] += static_cast<char>('a' + b);
        }
        for (int j = 0; j < n; j++) t[i][j] = i ^ j;
    }
    return LoopTable::validate(t, std::move(names));
}

LoopTable direct_product(const LoopTable& A, const LoopTable& B) {
    const int na = A.order(), nb = B.order(), n = na * nb;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> names(n);
    for (int a1 = 0; a1 < na; a1++)
        for (int b1 = 0; b1 < nb; b1++) {
            int i = a1 * nb + b1;
            names[i] = "(" + A.name(a1) + "," + B.name(b1) + ")";
            for (int a2 = 0; a2 < na; a2++)
                for (int b2 = 0; b2 < nb; b2++)
                    t[i][a2 * nb + b2] = A.mul(a1, a2) * nb + B.mul(b1, b2);
        }
    return LoopTable::validate(t, std::move(names));
}

LoopTable sym3() {
    // permutations of {0,1,2}, identity first, then transpositions, then 3-cycles
    const std::array<std::array<int, 3>, 6> perms = {{
        {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1},
    }};
    const std::array<const char*, 6> nm = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
    auto compose = [&](int i, int j) { // (p_i ∘ p_j)(x) = p_i(p_j(x))
        std::array<int, 3> c{};
        for (int x = 0; x < 3; x++) c[x] = perms[i][perms[j][x]];
        for (int k = 0; k < 6; k++)
            if (perms[k] == c) return k;
        return -1;
    };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int i = 0; i < 6; i++)
        for (int j = 0; j < 6; j++) t[i][j] = compose(i, j);
    return LoopTable::validate(t, std::vector<std::string>(nm.begin(), nm.end()));
}

LoopTable dihedral4() {
    // elements r^a s^e, index = a + 4e; (r^a s^e)(r^b s^f) = r^{a+(-1)^e b} s^{e+f}
    auto idx = [](int a, int e) { return ((a % 4) + 4) % 4 + 4 * (e % 2); };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    std::vector<std::string> names = {"1", "r", "r^2", "r^3", "s", "rs", "r^2s", "r^3s"};
    for (int a = 0; a < 4; a++)
        for (int e = 0; e < 2; e++)
            for (int b = 0; b < 4; b++)
                for (int f = 0; f < 2; f++)
                    t[idx(a, e)][idx(b, f)] = idx(a + (e ? -b : b), e + f);
    return LoopTable::validate(t, std::move(names));
}

LoopTable order6_nonassociative() {
    // 0:1 1:-1 2:s 3:-s 4:s^2 5:-s^2
    std::vector<std::vector<int>> t = {
        {0, 1, 2, 3, 4, 5},
        {1, 0, 3, 2, 5, 4},
        {2, 3, 4, 5, 0, 1},
        {3, 2, 5, 4, 1, 0},
        {4, 5, 1, 0, 2, 3},
        {5, 4, 0, 1, 3, 2},
    };
    return LoopTable::validate(t, {"1", "-1", "s", "-s", "s^2", "-s^2"});
}

Involution order6_involution(const LoopTable& L6) {
    // s <-> s^2, signs carried along
    return Involution::validate(L6, {0, 1, 4, 5, 2, 3});
}

LoopTable commutative_dim2() {
    // signed elements: index 2i+sign for i in {1(=a1),2,3}, 0:1 1:-1
    auto id = [](int gen, int neg) { return gen == 0 ? neg : 2 * gen + neg; };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    std::vector<std::string> names = {"1", "-1", "a1", "-a1", "a2", "-a2", "a3", "-a3"};
    for (int g1 = 0; g1 <= 3; g1++)
        for (int n1 = 0; n1 < 2; n1++)
            for (int g2 = 0; g2 <= 3; g2++)
                for (int n2 = 0; n2 < 2; n2++) {
                    int g, neg = (n1 + n2) % 2;
                    if (g1 == 0) {
                        g = g2;
                    } else if (g2 == 0) {
                        g = g1;
                    } else if (g1 == g2) {
                        g = 0;
                        neg ^= 1; // ai^2 = -1
                    } else {
                        g = 6 - g1 - g2; // ai·aj = ak
                    }
                    t[id(g1, n1)][id(g2, n2)] = id(g, neg);
                }
    return LoopTable::validate(t, std::move(names));
}

LoopTable rank3_central_group32() {
    // elements (v, z) with v in F2^3, z in F2^2; index = 4v + z;
    // (v,z)(w,y) = (v+w, z+y+f(v,w)) with f bilinear:
    // f(e1,e2) = u, f(e1,e3) = v-bit; squares trivial, center = {0} x F2^2
    auto f = [](int v, int w) {
        int z = 0;
        if ((v & 1) && (w & 2)) z ^= 1; // [x,y] = u
        if ((v & 1) && (w & 4)) z ^= 2; // [x,z] = u'
        return z;
    };
    const int n = 32;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> names(n);
    for (int v = 0; v < 8; v++)
        for (int z = 0; z < 4; z++) {
            int i = 4 * v + z;
            std::string nm;
            if (z & 1) nm += "u";
            if (z & 2) nm += "w";
            for (int b = 0; b < 3; b++)
                if (v & (1 << b)) nm += static_cast<char>('x' + b);
            names[i] = nm.empty() ? "1" : nm;
            for (int v2 = 0; v2 < 8; v2++)
                for (int z2 = 0; z2 < 4; z2++)
                    t[i][4 * v2 + z2] = 4 * (v ^ v2) + (z ^ z2 ^ f(v, v2));
        }
    return LoopTable::validate(t, std::move(names));
}

} // namespace cdloop
