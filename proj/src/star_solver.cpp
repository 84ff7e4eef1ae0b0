// Linkage of k = (d+1)/2 pairs inside the star of s1 in an odd-dimensional
// cubical d-polytope, following the case analysis on F1, the star facet holding
// t1 with the most terminals, and n1 = |X ∩ F1|.

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "linkage_internal.hpp"

namespace cubelink {
namespace detail {

namespace {

class StarLinker {
public:
    StarLinker(const Polytope& P, const Pairing& Y, Trace& tr) : P_(P), Y_(Y), tr_(tr) {
        d_ = P.dim();
        k_ = static_cast<int>(Y.size());
        s1_ = Y[0].first;
        t1_ = Y[0].second;
        X_ = terminals_of(Y);
        std::sort(X_.begin(), X_.end());
        for (int x : X_) xm_.set(static_cast<size_t>(x));
        for (int F : P.facets_of_vertex(s1_)) {
            star_.push_back(F);
            star_mask_ |= P.face(F).mask;
        }
        std::sort(star_.begin(), star_.end());
        GS_ = faces_graph(P, star_);
    }

    const Graph& star_graph() const { return GS_; }
    bool in_star(int v) const { return star_mask_.test(static_cast<size_t>(v)); }

    PathSystem run() {
        int best = -1;
        for (int F : star_) {
            if (!in(F, t1_)) continue;
            int c = static_cast<int>((P_.face(F).mask & xm_).count());
            if (c > best) {
                best = c;
                F1_ = F;
            }
        }
        s1o_ = P_.opposite_in(F1_, s1_);
        GA1_ = faces_graph(P_, star_, P_.face(F1_).mask);
        inj_ = projections_star_injection(P_, s1_, F1_);
        out_.assign(static_cast<size_t>(k_), {});

        const int n1 = best;
        if (n1 == d_) case_one();
        else if (n1 >= 3 && n1 <= d_ - 1) case_two();
        else if (n1 == 2) case_three();
        else if (n1 == d_ + 1) case_four();
        else fail(tr_, "terminal count in F1 outside every case");

        for (int i = 0; i < k_; ++i) out_[static_cast<size_t>(i)] = oriented(out_[static_cast<size_t>(i)], Y_[static_cast<size_t>(i)].first);
        return out_;
    }

private:
    // ---------------------------------------------------------------- helpers

    bool in(int face, int v) const { return P_.face_contains(face, v); }
    bool inX(int v) const { return xm_.test(static_cast<size_t>(v)); }
    int other_end(int i, int x) const {
        const auto& pr = Y_[static_cast<size_t>(i)];
        return pr.first == x ? pr.second : pr.first;
    }
    std::vector<int> terminals_in(int face) const {
        std::vector<int> r;
        for (int x : X_)
            if (in(face, x)) r.push_back(x);
        return r;
    }
    std::vector<char> blocked(const std::vector<int>& vs) const {
        std::vector<char> b(static_cast<size_t>(P_.vertex_count()), 0);
        for (int v : vs) b[static_cast<size_t>(v)] = 1;
        return b;
    }
    static std::vector<int> with(std::vector<int> a, const std::vector<int>& extra) {
        a.insert(a.end(), extra.begin(), extra.end());
        return a;
    }
    int image(int v) const {
        int w = inj_[static_cast<size_t>(v)];
        require(w >= 0, tr_, "vertex outside the domain of the projection injection");
        return w;
    }
    // Shortest path in the antistar A1 whose inner vertices avoid `block`.
    Path a1_path(int a, int b, const std::vector<int>& block = {}) const {
        auto p = bfs_path(GA1_, a, b, blocked(block));
        require(p.has_value(), tr_, "no path in the antistar of F1");
        return *p;
    }
    // Shortest path in `face` whose inner vertices avoid `block`.
    Path bfs(int face, int s, int t, const std::vector<int>& block) const {
        auto p = face_bfs(P_, face, s, t, block);
        require(p.has_value(), tr_, "no path inside a face");
        return *p;
    }
    // Axis of F's chart along which the ridge pair is unassociated with Z.
    int unassociated_axis(int F, const std::vector<int>& Z) const {
        const CubeChart& ch = P_.face(F).chart;
        std::vector<Bits> ls;
        for (int z : Z) ls.push_back(ch.label(z));
        return find_unassociated_pair(ls, CubeFace::whole(ch.dim())).axis;
    }
    // The codimension-one subface of F cut by `axis` that contains v.
    int side_of(int F, int axis, int v) const {
        const CubeChart& ch = P_.face(F).chart;
        int val = static_cast<int>((ch.label(v) >> axis) & 1U);
        return P_.subface(F, CubeFace::facet(ch.dim(), axis, val != 0));
    }
    // v itself when it already lies in `target`, else its projection inside J.
    int onto(int J, int target, int v) const { return in(target, v) ? v : P_.project_within(J, target, v); }

    std::map<int, Path> menger(const Graph& G, const std::vector<int>& A, const std::vector<int>& B) const {
        MengerResult m = disjoint_paths(G, A, B, static_cast<int>(A.size()));
        require(m.ok, tr_, "not enough disjoint paths");
        std::map<int, Path> by_start;
        for (Path& p : m.paths) by_start[p.front()] = p;
        return by_start;
    }

    // Two pairs in a 3-cube face sitting as the diagonals of one square.
    bool diagonal_square(int face, std::pair<int, int> a, std::pair<int, int> b) const {
        const CubeChart& ch = P_.face(face).chart;
        Bits la = ch.label(a.first), lb = ch.label(a.second), lc = ch.label(b.first), le = ch.label(b.second);
        if (dist(la, lb) != 2 || dist(lc, le) != 2) return false;
        Bits spread = (la ^ lb) | (la ^ lc) | (la ^ le);
        return std::popcount(spread) == 2;
    }

    // Two-linkage in A1 through a ridge lying inside A1 (d >= 7).
    PathSystem a1_link(const Pairing& pairs) const {
        tr_.push_back("star-cubical/antistar-linkage");
        int Rp = -1;
        for (int R : P_.subfacets(F1_))
            if (in(R, s1_)) {
                Rp = R;
                break;
            }
        const int Fp = P_.other_facet(Rp, F1_);
        const int R = P_.opposite_subface(Fp, Rp);
        const Polytope& P = P_;
        Trace& tr = tr_;
        return link_via_subgraph(
            GA1_, pairs, P_.face(R).vertices,
            [&P, &tr, R](const Pairing& inner) { return face_link(P, R, inner, {}, tr); }, &tr_);
    }

    void set(int i, Path p) { out_[static_cast<size_t>(i)] = std::move(p); }

    // ---------------------------------------------------------------- case 1: |X ∩ F1| = d

    void case_one() {
        tr_.push_back("star-cubical/case-1");
        int j = -1, s2 = -1, t2 = -1;
        for (int i = 1; i < k_; ++i) {
            auto [a, b] = Y_[static_cast<size_t>(i)];
            if (!in(F1_, a) || !in(F1_, b)) {
                j = i;
                s2 = in(F1_, a) ? a : b;
                t2 = in(F1_, a) ? b : a;
            }
        }
        require(j > 0, tr_, "no pair leaves F1");
        std::vector<int> rest;
        for (int i = 0; i < k_; ++i)
            if (i != j) rest.push_back(i);

        if (face_dist(P_, F1_, s2, s1_) < d_ - 1) {
            tr_.push_back("star-cubical/case-1/near");
            Pairing pairs;
            for (int i : rest) pairs.push_back(Y_[static_cast<size_t>(i)]);
            PathSystem L = face_link(P_, F1_, pairs, {s2}, tr_);
            for (size_t q = 0; q < rest.size(); ++q) set(rest[q], L[q]);
            set(j, join(Path{s2}, a1_path(image(s2), t2)));
            return;
        }

        tr_.push_back("star-cubical/case-1/far");
        std::vector<int> Z;
        for (int x : terminals_in(F1_))
            if (x != s2) Z.push_back(x);
        const int axis = unassociated_axis(F1_, Z);
        const int R = side_of(F1_, axis, s2);
        const int Ro = P_.opposite_subface(F1_, R);
        const std::vector<int> nb = P_.neighbors_in(R, s2);
        auto free_nb = std::find_if(nb.begin(), nb.end(), [&](int w) { return !inX(w); });

        if (free_nb == nb.end()) {
            tr_.push_back("star-cubical/case-1/far/surrounded");
            Pairing pairs;
            std::vector<int> idx;
            for (int i : rest)
                if (i != 0) {
                    pairs.push_back(Y_[static_cast<size_t>(i)]);
                    idx.push_back(i);
                }
            PathSystem L = face_link(P_, R, pairs, {s2, t1_}, tr_);
            for (size_t q = 0; q < idx.size(); ++q) set(idx[q], L[q]);
            const int p = P_.project_within(F1_, Ro, s2);
            set(j, join(Path{s2, p}, a1_path(image(p), t2)));
            const int q = onto(F1_, Ro, t1_);
            set(0, join(bfs(Ro, s1_, q, {p}), Path{t1_}));
            return;
        }

        const int sb = *free_nb;
        set(j, join(Path{s2, sb}, a1_path(image(sb), t2)));
        Pairing proj;
        for (int i : rest) {
            auto [a, b] = Y_[static_cast<size_t>(i)];
            proj.emplace_back(onto(F1_, Ro, a), onto(F1_, Ro, b));
        }
        if (d_ == 5 && diagonal_square(Ro, proj[0], proj[1])) {
            tr_.push_back("star-cubical/case-1/far/square");
            const int c = rest[1];
            auto [sc, tc] = Y_[static_cast<size_t>(c)];
            std::vector<int> block{s2, sb};
            if (in(R, t1_)) block.push_back(t1_);
            Path Lc = bfs(R, onto(F1_, R, sc), onto(F1_, R, tc), block);
            set(c, join({Path{sc}, Lc, Path{tc}}));
            Path L1 = bfs(Ro, s1_, onto(F1_, Ro, t1_), {onto(F1_, Ro, sc), onto(F1_, Ro, tc)});
            set(0, join(L1, Path{t1_}));
            return;
        }
        PathSystem L = face_link(P_, Ro, proj, {}, tr_);
        for (size_t q = 0; q < rest.size(); ++q) {
            auto [a, b] = Y_[static_cast<size_t>(rest[q])];
            set(rest[q], join({Path{a}, L[q], Path{b}}));
        }
    }

    // ---------------------------------------------------------------- case 2: 3 <= n1 <= d-1

    void case_two() {
        tr_.push_back("star-cubical/case-2");
        const int axis = unassociated_axis(F1_, terminals_in(F1_));
        const int R = side_of(F1_, axis, s1_);
        const int Ro = P_.opposite_subface(F1_, R);
        std::vector<int> TA;
        for (int x : X_)
            if (!in(F1_, x)) TA.push_back(x);

        std::map<int, Path> entry;  // terminal -> path to its entry vertex
        int host = -1;
        std::vector<int> avoid;
        if (in(R, t1_)) {
            tr_.push_back("star-cubical/case-2/same-ridge");
            set(0, bfs(R, s1_, t1_, X_));
            std::vector<int> XRo;
            for (int x : terminals_in(F1_))
                if (x != s1_ && x != t1_) XRo.push_back(onto(F1_, Ro, x));
            std::vector<int> Zbar;
            auto usable = [&](int z) { return z != s1o_ && !contains(XRo, z) && !contains(Zbar, z); };
            if (d_ == 5) {
                bool far = false;
                for (int a : XRo)
                    for (int b : XRo)
                        if (face_dist(P_, Ro, a, b) == 3) far = true;
                if (!far && !XRo.empty()) {
                    tr_.push_back("star-cubical/case-2/same-ridge/antipode");
                    int z = P_.opposite_in(Ro, *std::min_element(XRo.begin(), XRo.end()));
                    require(usable(z), tr_, "antipodal entry vertex is occupied");
                    Zbar.push_back(z);
                }
            }
            for (int z : P_.face(Ro).vertices)
                if (Zbar.size() < TA.size() && usable(z)) Zbar.push_back(z);
            require(Zbar.size() == TA.size(), tr_, "not enough entry vertices in the opposite ridge");
            std::map<int, int> back;  // image in A1 -> vertex of Ro
            std::vector<int> Z;
            for (int z : Zbar) {
                Z.push_back(image(z));
                back[Z.back()] = z;
            }
            for (auto& [x, p] : menger(GA1_, TA, Z)) entry[x] = join(p, Path{back.at(p.back())});
            for (int x : terminals_in(F1_))
                if (x != s1_ && x != t1_) entry[x] = in(Ro, x) ? Path{x} : Path{x, onto(F1_, Ro, x)};
            host = Ro;
        } else {
            tr_.push_back("star-cubical/case-2/opposite-ridge");
            set(0, join(Path{s1_}, bfs(Ro, P_.project_within(F1_, Ro, s1_), t1_, X_)));
            const int J = P_.other_facet(R, F1_);
            const int RJ = P_.opposite_subface(J, R);
            for (auto& [x, p] : menger(GA1_, TA, P_.face(RJ).vertices)) entry[x] = p;
            for (int x : terminals_in(F1_))
                if (x != s1_ && x != t1_) entry[x] = in(R, x) ? Path{x} : Path{x, P_.project_within(F1_, R, x)};
            host = J;
            avoid = {s1_};
        }
        Pairing pairs;
        for (int i = 1; i < k_; ++i) {
            auto [a, b] = Y_[static_cast<size_t>(i)];
            pairs.emplace_back(entry.at(a).back(), entry.at(b).back());
        }
        PathSystem L = face_link(P_, host, pairs, avoid, tr_);
        for (int i = 1; i < k_; ++i) {
            auto [a, b] = Y_[static_cast<size_t>(i)];
            set(i, join({entry.at(a), L[static_cast<size_t>(i - 1)], reversed(entry.at(b))}));
        }
    }

    // ---------------------------------------------------------------- case 3: n1 = 2

    void case_three() {
        tr_.push_back("star-cubical/case-3");
        const int s2 = Y_[1].first;
        std::vector<int> S12;
        VertexMask gamma;
        for (int F : star_)
            if (in(F, s2)) {
                S12.push_back(F);
                gamma |= P_.face(F).mask;
            }
        gamma &= ~P_.face(F1_).mask;
        std::vector<int> B, A;
        for (int v = 0; v < P_.vertex_count(); ++v)
            if (gamma.test(static_cast<size_t>(v))) B.push_back(v);
        for (int x : X_)
            if (x != s1_ && x != t1_ && x != s2) A.push_back(x);
        std::map<int, Path> head = menger(GA1_, A, B);
        head[s2] = Path{s2};
        for (auto& [x, p] : head)
            if (x != s2) require(!contains(p, s2), tr_, "routing path meets s2");
        auto hat = [&](int x) { return head.at(x).back(); };

        const int t2h = hat(Y_[1].second);
        int F12 = -1;
        for (int F : S12)
            if (in(F, t2h)) {
                F12 = F;
                break;
            }
        require(F12 >= 0 && !in(F12, t1_), tr_, "no facet of the star of s2 suited for the second pair");

        // L1 runs from s1 into the ridge of F1 missing F12 and on to t1.
        {
            auto meet = P_.find_face(P_.face(F1_).mask & P_.face(F12).mask);
            require(meet.has_value(), tr_, "F1 and F12 do not meet in a face");
            CubeFace lf = P_.local_face(F1_, *meet);
            Bits lt = P_.face(F1_).chart.label(t1_);
            int axis = -1;
            for (int a = 0; a < d_ - 1 && axis < 0; ++a)
                if (((lf.mask >> a) & 1U) && (((lt ^ lf.values) >> a) & 1U)) axis = a;
            require(axis >= 0, tr_, "t1 lies in F12");
            const int Ro = side_of(F1_, axis, t1_);
            set(0, join(Path{s1_}, bfs(Ro, P_.project_within(F1_, Ro, s1_), t1_, {})));
        }

        std::map<int, Path> entry;
        for (auto& [x, p] : head) entry[x] = p;
        if (S12.size() > 1) {
            tr_.push_back("star-cubical/case-3/several-facets");
            const CubeChart& ch = P_.face(F12).chart;
            Bits agree = ~(ch.label(s1_) ^ ch.label(s2)) & full_mask(ch.dim());
            require(agree != 0, tr_, "s1 and s2 are opposite in F12");
            const int U = side_of(F12, std::countr_zero(agree), s1_);
            const int J12 = P_.other_facet(U, F12);
            const int UJ = P_.opposite_subface(J12, U);
            VertexMask excl = P_.face(F1_).mask | P_.face(F12).mask;
            Graph GA12 = faces_graph(P_, S12, excl);
            std::vector<int> src, taken;
            for (auto& [x, p] : head)
                if (!in(F12, p.back())) src.push_back(p.back());
            for (auto& [x, p] : head)
                if (in(U, p.back())) taken.push_back(P_.project_within(J12, UJ, p.back()));
            taken.push_back(P_.project_within(J12, UJ, s1_));
            std::vector<int> W;
            for (int w : P_.face(UJ).vertices)
                if (W.size() < src.size() && !in(F1_, w) && !contains(taken, w)) W.push_back(w);
            require(W.size() == src.size(), tr_, "not enough landing vertices opposite U");
            std::map<int, Path> mid = menger(GA12, src, W);
            for (auto& [x, p] : entry)
                if (mid.count(p.back())) {
                    const Path& m = mid.at(p.back());
                    p = join({p, m, Path{P_.project_within(J12, U, m.back())}});
                }
        } else {
            tr_.push_back("star-cubical/case-3/single-facet");
        }
        Pairing pairs;
        for (int i = 1; i < k_; ++i) {
            auto [a, b] = Y_[static_cast<size_t>(i)];
            require(in(F12, entry.at(a).back()) && in(F12, entry.at(b).back()), tr_, "entry outside F12");
            pairs.emplace_back(entry.at(a).back(), entry.at(b).back());
        }
        PathSystem L = face_link(P_, F12, pairs, {s1_}, tr_);
        for (int i = 1; i < k_; ++i) {
            auto [a, b] = Y_[static_cast<size_t>(i)];
            set(i, join({entry.at(a), L[static_cast<size_t>(i - 1)], reversed(entry.at(b))}));
        }
    }

    // ---------------------------------------------------------------- case 4: n1 = d+1

    // Path u -> image(u) -> ... -> image(w) -> w through A1.
    Path via_a1(int u, int w, const std::vector<int>& block = {}) const {
        return join({Path{u}, a1_path(image(u), image(w), block), Path{w}});
    }

    // Finishes the large-d subcases: the pairs other than the first are linked by
    // `inner` (indexed like Y, entry 0 unused); L1 runs through A1 from `a` to `b`
    // (b = t1, or the vertex next to t1 when `tail` is set), rerouting the path that
    // passes through b.
    void settle_through_a1(PathSystem inner, int b, const Path& tail, const std::vector<int>& detour) {
        int hit = -1;
        for (int i = 1; i < k_; ++i)
            if (contains(inner[static_cast<size_t>(i)], b)) hit = i;
        for (int i = 1; i < k_; ++i) set(i, inner[static_cast<size_t>(i)]);
        if (hit < 0) {
            set(0, join(via_a1(s1_, b), tail));
            return;
        }
        tr_.push_back("star-cubical/case-4/reroute");
        auto [sj, tj] = Y_[static_cast<size_t>(hit)];
        if (!detour.empty() && detour.front() == tj) std::swap(sj, tj);
        // A path that starts with a forced edge keeps it (detour = [sj, next]).
        int from = sj;
        Path head{sj};
        if (!detour.empty() && detour.front() == sj) {
            head = detour;
            from = detour.back();
        }
        PathSystem two = a1_link({{image(s1_), image(b)}, {image(from), image(tj)}});
        set(0, join({Path{s1_}, two[0], Path{b}, tail}));
        set(hit, join({head, two[1], Path{tj}}));
    }

    void case_four() {
        tr_.push_back("star-cubical/case-4");
        if (d_ == 5) {
            case_four_small();
            return;
        }
        const int jo = partner_index(Y_, s1o_);
        if (jo < 0) {
            tr_.push_back("star-cubical/case-4/opposite-free");
            Pairing pairs(Y_.begin() + 1, Y_.end());
            PathSystem L = face_link(P_, F1_, pairs, {s1_}, tr_);
            L.insert(L.begin(), Path{});
            settle_through_a1(L, t1_, {}, {});
            return;
        }
        if (jo > 0) {
            tr_.push_back("star-cubical/case-4/opposite-terminal");
            const int s2 = s1o_, t2 = other_end(jo, s2);
            const std::vector<int> nb = P_.neighbors_in(F1_, s2);
            Pairing pairs;
            std::vector<int> idx;
            int s2F;
            if (contains(nb, t2)) {
                s2F = t2;
                pairs.emplace_back(t1_, t2);  // reserves t1 and t2
            } else {
                auto it = std::find_if(nb.begin(), nb.end(), [&](int w) { return !inX(w); });
                require(it != nb.end(), tr_, "every neighbour of the opposite terminal is taken");
                s2F = *it;
                pairs.emplace_back(s2F, t2);
            }
            idx.push_back(jo);
            for (int i = 1; i < k_; ++i)
                if (i != jo) {
                    pairs.push_back(Y_[static_cast<size_t>(i)]);
                    idx.push_back(i);
                }
            PathSystem L = face_link_of_vertex(P_, F1_, s1_, pairs, tr_);
            PathSystem inner(static_cast<size_t>(k_));
            for (size_t q = 0; q < idx.size(); ++q) inner[static_cast<size_t>(idx[q])] = L[q];
            if (s2F == t2) {
                inner[static_cast<size_t>(jo)] = Path{s2, t2};
                settle_through_a1(inner, t1_, {}, {});
            } else {
                inner[static_cast<size_t>(jo)] = join(Path{s2}, oriented(L[0], s2F));
                settle_through_a1(inner, t1_, {}, {s2, s2F});
            }
            return;
        }
        tr_.push_back("star-cubical/case-4/opposite-partner");
        const std::vector<int> nb = P_.neighbors_in(F1_, t1_);
        auto it = std::find_if(nb.begin(), nb.end(), [&](int w) { return !inX(w); });
        require(it != nb.end(), tr_, "every neighbour of t1 is taken");
        const int t1F = *it;
        Pairing pairs(Y_.begin() + 1, Y_.end());
        PathSystem L = face_link_of_vertex(P_, F1_, s1_, pairs, tr_);
        L.insert(L.begin(), Path{});
        settle_through_a1(L, t1F, Path{t1F, t1_}, {});
    }

    // ---------------------------------------------------------------- case 4, d = 5

    // Path of length at most two from x inside F1 into `target`, avoiding `bad`;
    // the direct projection first, then through neighbours of x in its own ridge.
    std::optional<Path> short_hop(int x, int home, int target, const std::vector<int>& bad, int allowed_end) const {
        auto ok_end = [&](int e) { return e == allowed_end || !contains(bad, e); };
        int e = P_.project_within(F1_, target, x);
        if (ok_end(e)) return Path{x, e};
        for (int u : P_.neighbors_in(home, x)) {
            if (contains(bad, u)) continue;
            int f = P_.project_within(F1_, target, u);
            if (ok_end(f)) return Path{x, u, f};
        }
        return std::nullopt;
    }

    void case_four_small() {
        const bool partner_opposite = t1_ == s1o_;
        int t1F = t1_;
        int R;
        if (partner_opposite) {
            tr_.push_back("star-cubical/case-4/d5-opposite-partner");
            const std::vector<int> nb = P_.neighbors_in(F1_, t1_);
            auto it = std::find_if(nb.begin(), nb.end(), [&](int w) { return !inX(w); });
            require(it != nb.end(), tr_, "every neighbour of t1 is taken");
            t1F = *it;
        } else {
            tr_.push_back("star-cubical/case-4/d5");
        }
        {
            const CubeChart& ch = P_.face(F1_).chart;
            Bits agree = ~(ch.label(s1_) ^ ch.label(t1F)) & full_mask(ch.dim());
            require(agree != 0, tr_, "no ridge holds s1 and t1");
            R = side_of(F1_, std::countr_zero(agree), s1_);
        }
        const int RF = P_.opposite_subface(F1_, R);
        const int J1 = P_.other_facet(R, F1_);
        const int RJ = P_.opposite_subface(J1, R);

        auto pair_in = [&](int face, int i) {
            auto [a, b] = Y_[static_cast<size_t>(i)];
            return in(face, a) && in(face, b);
        };
        auto proj_path = [&](int i, int J, int G, const std::vector<int>& block) {
            auto [a, b] = Y_[static_cast<size_t>(i)];
            Path mid = bfs(G, onto(J, G, a), onto(J, G, b), block);
            set(i, join({Path{a}, mid, Path{b}}));
        };
        const int a2 = 1, a3 = 2;

        if (partner_opposite) {
            // t1 sits in RF; L1 ends with the edge t1F t1.
            int j = -1;
            for (int i : {a2, a3})
                if (j < 0 && pair_in(R, i)) j = i;
            if (j > 0) {
                tr_.push_back("star-cubical/case-4/d5-opposite-partner/pair-in-R");
                const int c = j == a2 ? a3 : a2;
                auto [sj, tj] = Y_[static_cast<size_t>(j)];
                Pairing pr{{onto(J1, RJ, s1_), onto(J1, RJ, t1F)}, {onto(J1, RJ, sj), onto(J1, RJ, tj)}};
                PathSystem L = face_link(P_, RJ, pr, {}, tr_);
                set(0, join({Path{s1_}, L[0], Path{t1F, t1_}}));
                set(j, join({Path{sj}, L[1], Path{tj}}));
                proj_path(c, F1_, RF, {t1_});
                return;
            }
            for (int i : {a2, a3})
                if (j < 0 && pair_in(RF, i)) {
                    auto [a, b] = Y_[static_cast<size_t>(i)];
                    if (face_bfs(P_, RF, a, b, X_)) j = i;
                }
            if (j > 0) {
                tr_.push_back("star-cubical/case-4/d5-opposite-partner/pair-in-RF");
                const int c = j == a2 ? a3 : a2;
                auto [sj, tj] = Y_[static_cast<size_t>(j)];
                set(j, bfs(RF, sj, tj, X_));
                auto [sc, tc] = Y_[static_cast<size_t>(c)];
                set(c, via_a1(sc, tc));
                set(0, join(bfs(R, s1_, t1F, X_), Path{t1_}));
                return;
            }
            tr_.push_back("star-cubical/case-4/d5-opposite-partner/split");
            for (int b : {a2, a3}) {
                const int c = b == a2 ? a3 : a2;
                auto [sb, tb] = Y_[static_cast<size_t>(b)];
                if (in(RF, sb)) std::swap(sb, tb);
                auto [sc, tc] = Y_[static_cast<size_t>(c)];
                std::vector<int> bad = with(X_, {t1F});
                auto S = short_hop(sb, R, RF, bad, tb);
                if (!S) continue;
                set(b, join(*S, bfs(RF, S->back(), tb, X_)));
                set(c, via_a1(sc, tc));
                set(0, join(bfs(R, s1_, t1F, with(X_, {(*S)[1]})), Path{t1_}));
                return;
            }
            fail(tr_, "no short hop for a split pair");
        }

        // s1 and t1 share the ridge R.
        if (pair_in(R, a2) && pair_in(R, a3)) {
            tr_.push_back("star-cubical/case-4/d5/all-in-R");
            const std::vector<std::pair<int, int>> combos{{0, a2}, {0, a3}, {a2, a3}};
            for (auto [p, q] : combos) {
                std::pair<int, int> yp = Y_[static_cast<size_t>(p)], yq = Y_[static_cast<size_t>(q)];
                if (diagonal_square(R, yp, yq)) continue;
                const int c = 3 - p - q;  // indices 0, 1, 2
                Pairing pr{{onto(J1, RJ, yp.first), onto(J1, RJ, yp.second)},
                           {onto(J1, RJ, yq.first), onto(J1, RJ, yq.second)}};
                PathSystem L = face_link(P_, RJ, pr, {}, tr_);
                set(p, join({Path{yp.first}, L[0], Path{yp.second}}));
                set(q, join({Path{yq.first}, L[1], Path{yq.second}}));
                proj_path(c, F1_, RF, {});
                return;
            }
            fail(tr_, "every two pairs form a square");
        }
        for (int j : {a2, a3}) {
            if (!pair_in(R, j)) continue;
            tr_.push_back("star-cubical/case-4/d5/pair-in-R");
            const int c = j == a2 ? a3 : a2;
            auto [sj, tj] = Y_[static_cast<size_t>(j)];
            if (auto Lj = face_bfs(P_, R, sj, tj, X_)) {
                set(j, *Lj);
                proj_path(0, J1, RJ, {});
            } else {
                set(0, bfs(R, s1_, t1_, X_));
                proj_path(j, J1, RJ, {});
            }
            proj_path(c, F1_, RF, {});
            return;
        }
        for (int j : {a2, a3}) {
            if (!pair_in(RF, j)) continue;
            const int c = j == a2 ? a3 : a2;
            auto [sc, tc] = Y_[static_cast<size_t>(c)];
            if (in(R, sc) || in(R, tc)) {
                tr_.push_back("star-cubical/case-4/d5/pair-in-RF/split-other");
                if (!in(R, sc)) std::swap(sc, tc);
                auto T = short_hop(tc, RF, R, X_, sc);
                if (T) {
                    const int tcp = T->back();
                    if (tcp == sc) {
                        set(0, face_link(P_, J1, {{s1_, t1_}}, {sc}, tr_)[0]);
                        set(c, reversed(*T));
                    } else {
                        PathSystem L = face_link(P_, J1, {{s1_, t1_}, {sc, tcp}}, {}, tr_);
                        set(0, L[0]);
                        set(c, join(L[1], reversed(*T)));
                    }
                    auto [sj, tj] = Y_[static_cast<size_t>(j)];
                    std::vector<int> block = X_;
                    block.insert(block.end(), T->begin(), T->end());
                    set(j, bfs(RF, sj, tj, block));
                } else {
                    tr_.push_back("star-cubical/case-4/d5/pair-in-RF/no-hop");
                    require(P_.graph().adjacent(s1_, t1_), tr_, "s1 and t1 are not adjacent");
                    set(0, Path{s1_, t1_});
                    auto [sj, tj] = Y_[static_cast<size_t>(j)];
                    set(j, bfs(RF, sj, tj, {tc}));
                    set(c, via_a1(sc, tc));
                }
                return;
            }
            tr_.push_back("star-cubical/case-4/d5/both-in-RF");
            set(0, bfs(R, s1_, t1_, X_));
            std::vector<int> order{j, c};
            const int jo = partner_index(Y_, s1o_);
            if (jo > 0) order = {jo, jo == a2 ? a3 : a2};
            for (int b : order) {
                auto [sb, tb] = Y_[static_cast<size_t>(b)];
                auto L = face_bfs(P_, RF, sb, tb, X_);
                if (!L) continue;
                const int o = b == a2 ? a3 : a2;
                auto [so, to] = Y_[static_cast<size_t>(o)];
                if (so == s1o_ || to == s1o_) continue;
                set(b, *L);
                set(o, via_a1(so, to));
                return;
            }
            fail(tr_, "no terminal-free path for a pair in the opposite ridge");
        }

        tr_.push_back("star-cubical/case-4/d5/split");
        std::vector<int> order{a2, a3};
        {
            auto [s, t] = Y_[static_cast<size_t>(a2)];
            if (s == s1o_ || t == s1o_) order = {a3, a2};
        }
        const int i2 = order[0], i3 = order[1];
        auto ends = [&](int i) {
            auto [a, b] = Y_[static_cast<size_t>(i)];
            return in(R, a) ? std::pair{a, b} : std::pair{b, a};
        };
        auto [s2, t2] = ends(i2);
        auto [s3, t3] = ends(i3);
        if (auto S3 = short_hop(s3, R, RF, X_, t3)) {
            tr_.push_back("star-cubical/case-4/d5/split/hop");
            set(i2, via_a1(s2, t2));
            set(i3, join(*S3, bfs(RF, S3->back(), t3, X_)));
            set(0, bfs(R, s1_, t1_, with(X_, {(*S3)[1]})));
            return;
        }
        tr_.push_back("star-cubical/case-4/d5/split/no-hop");
        Path T3;
        if (t3 != s1o_) {
            T3 = Path{t3, image(t3)};
        } else {
            for (int u : P_.neighbors_in(RF, t3))
                if (T3.empty() && !inX(u) && u != t2) T3 = Path{t3, u, image(u)};
            require(!T3.empty(), tr_, "no exit from the opposite vertex");
        }
        set(i3, join({Path{s3}, a1_path(image(s3), T3.back()), reversed(T3)}));
        std::vector<int> bad = with(X_, T3);
        bad.erase(std::remove(bad.begin(), bad.end(), t2), bad.end());
        bad.push_back(t3);
        auto S2 = short_hop(s2, R, RF, bad, t2);
        require(S2.has_value(), tr_, "no short hop for the second pair");
        std::vector<int> blockRF = with(X_, T3);
        set(i2, join(*S2, bfs(RF, S2->back(), t2, blockRF)));
        set(0, bfs(R, s1_, t1_, with(X_, {(*S2)[1]})));
    }

    const Polytope& P_;
    const Pairing& Y_;
    Trace& tr_;
    int d_ = 0, k_ = 0, s1_ = -1, t1_ = -1;
    std::vector<int> X_;
    VertexMask xm_;
    std::vector<int> star_;
    VertexMask star_mask_;
    Graph GS_;
    int F1_ = -1, s1o_ = -1;
    Graph GA1_;
    std::vector<int> inj_;
    PathSystem out_;
};

}  // namespace

}  // namespace detail

using namespace detail;

LinkageCertificate solve_star(const Polytope& P, const Pairing& Y) {
    const int d = P.dim();
    if (d < 5 || d % 2 == 0) throw std::invalid_argument("solve_star: dimension must be odd and at least 5");
    if (static_cast<int>(Y.size()) != (d + 1) / 2) throw std::invalid_argument("solve_star: need exactly (d+1)/2 pairs");
    std::set<int> seen;
    for (int x : terminals_of(Y)) {
        if (x < 0 || x >= P.vertex_count()) throw std::invalid_argument("solve_star: terminal out of range");
        if (!seen.insert(x).second) throw std::invalid_argument("solve_star: terminals must be distinct");
    }
    LinkageCertificate cert;
    cert.trace.push_back("star-cubical");
    if (auto w = detect_config_dF(P, Y[0].first, Y)) {
        cert.trace.push_back("star-cubical/config-dF");
        cert.obstruction = w;
        return cert;
    }
    StarLinker S(P, Y, cert.trace);
    for (int x : terminals_of(Y))
        if (!S.in_star(x)) throw std::invalid_argument("solve_star: terminal outside the star of s1");
    cert.paths = S.run();
    check_linkage(S.star_graph(), Y, cert.paths, {}, cert.trace);
    cert.linked = true;
    return cert;
}

}  // namespace cubelink
