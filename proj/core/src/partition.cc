#include "homcirc/partition.hh"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace homcirc {

void SetPartition::canonicalize() {
    for (auto &b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto &x, const auto &y) { return x.front() < y.front(); });
}

auto SetPartition::valid() const -> bool {
    std::vector<int> seen(ground_size, 0);
    for (const auto &b : blocks) {
        if (b.empty()) return false;
        for (int v : b) {
            if (v < 0 || v >= ground_size || seen[v]) return false;
            seen[v] = 1;
        }
    }
    for (int v : seen)
        if (!v) return false;
    return true;
}

auto SetPartition::block_of() const -> std::vector<int> {
    std::vector<int> out(ground_size, -1);
    for (int i = 0; i < num_blocks(); ++i)
        for (int v : blocks[i]) out[v] = i;
    return out;
}

auto discrete_partition(int n) -> SetPartition {
    SetPartition p;
    p.ground_size = n;
    for (int i = 0; i < n; ++i) p.blocks.push_back({i});
    return p;
}

auto enumerate_partitions(int ground_size) -> std::vector<SetPartition> {
    if (ground_size < 0 || ground_size > 12)
        throw std::invalid_argument("partition enumeration capped at ground size 12");
    std::vector<SetPartition> out;
    // restricted growth strings: assign each element a block id that is at
    // most 1 + max of earlier ids; this yields each partition exactly once
    // already in min-element canonical block order.
    std::vector<int> rgs(ground_size, 0);
    auto emit = [&] {
        SetPartition p;
        p.ground_size = ground_size;
        int nb = ground_size ? *std::max_element(rgs.begin(), rgs.end()) + 1 : 0;
        p.blocks.resize(nb);
        for (int v = 0; v < ground_size; ++v) p.blocks[rgs[v]].push_back(v);
        out.push_back(std::move(p));
    };
    std::function<void(int, int)> rec = [&](int pos, int maxid) {
        if (pos == ground_size) {
            emit();
            return;
        }
        for (int b = 0; b <= maxid + 1; ++b) {
            rgs[pos] = b;
            rec(pos + 1, std::max(maxid, b));
        }
    };
    if (ground_size == 0)
        emit();
    else {
        rgs[0] = 0;
        rec(1, 0);
    }
    return out;
}

auto moebius(const SetPartition &pi) -> Rat {
    Rat mu = 1;
    for (const auto &b : pi.blocks) mu *= factorial(static_cast<unsigned>(b.size()) - 1);
    int sign_exp = pi.ground_size - pi.num_blocks();
    if (sign_exp % 2) mu = -mu;
    return mu;
}

auto refines(const SetPartition &pi, const SetPartition &sigma) -> bool {
    auto bo = sigma.block_of();
    for (const auto &b : pi.blocks)
        for (size_t i = 1; i < b.size(); ++i)
            if (bo[b[i]] != bo[b[0]]) return false;
    return true;
}

auto moebius_recursive(const SetPartition &target) -> Rat {
    auto all = enumerate_partitions(target.ground_size);
    // mu(discrete, pi) over the lattice ordered by refinement, computed by
    // the textbook recursion; quadratic in Bell(n) but only used as oracle.
    std::map<std::vector<std::vector<int>>, Rat> memo;
    std::function<Rat(const SetPartition &)> mu = [&](const SetPartition &u) -> Rat {
        auto it = memo.find(u.blocks);
        if (it != memo.end()) return it->second;
        Rat val;
        if (u.num_blocks() == u.ground_size) {
            val = 1;  // u is the discrete partition itself
        } else {
            val = 0;
            for (const auto &t : all)
                if (refines(t, u) && !(t == u)) val -= mu(t);
        }
        memo.emplace(u.blocks, val);
        return val;
    };
    return mu(target);
}

void for_each_map(int a, int i, const std::function<void(const std::vector<int> &)> &f) {
    std::vector<int> h(a, 0);
    if (a == 0) {
        f(h);
        return;
    }
    if (i == 0) return;
    while (true) {
        f(h);
        int pos = a - 1;
        while (pos >= 0 && ++h[pos] == i) h[pos--] = 0;
        if (pos < 0) break;
    }
}

void for_each_injection(int a, int i, const std::function<void(const std::vector<int> &)> &f) {
    for_each_map(a, i, [&](const std::vector<int> &h) {
        std::vector<int> used(i, 0);
        for (int x : h)
            if (used[x]++) return;
        f(h);
    });
}

auto check_moebius_inversion(int a_size, int i_size,
                             const std::function<Rat(const std::vector<int> &)> &p) -> bool {
    if (a_size < 0 || a_size > 5 || i_size < 0 || i_size > 5)
        throw std::invalid_argument("moebius inversion check capped at |A|,|I| <= 5");

    Rat all_sum = 0, inj_sum = 0;
    for_each_map(a_size, i_size, [&](const std::vector<int> &h) { all_sum += p(h); });
    for_each_injection(a_size, i_size, [&](const std::vector<int> &h) { inj_sum += p(h); });

    Rat rhs1 = 0, rhs2 = 0;
    for (const auto &pi : enumerate_partitions(a_size)) {
        auto bo = pi.block_of();
        int nb = pi.num_blocks();
        auto compose = [&](const std::vector<int> &h) {
            std::vector<int> hp(a_size);
            for (int v = 0; v < a_size; ++v) hp[v] = h[bo[v]];
            return hp;
        };
        Rat inj_part = 0, map_part = 0;
        for_each_injection(nb, i_size, [&](const std::vector<int> &h) { inj_part += p(compose(h)); });
        for_each_map(nb, i_size, [&](const std::vector<int> &h) { map_part += p(compose(h)); });
        rhs1 += inj_part;
        rhs2 += moebius(pi) * map_part;
    }
    return all_sum == rhs1 && inj_sum == rhs2;
}

}  // namespace homcirc
