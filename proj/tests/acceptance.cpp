// One line per acceptance criterion; exits nonzero when any fails.

#include "jooip/type_bridge.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <iostream>
#include <random>
#include <set>

using namespace jooip;
using namespace test_support;

namespace {

const char* kCorpus[] = {"naturals.hyb", "naturals42.hyb", "euler.hyb",        "feynman.hyb",
                         "prime.hyb",    "hamming.hyb",    "trafficlight.hyb", "multi.hyb"};

struct Outcome {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(int n, const std::string& title, double limit_ms, const std::function<void(Outcome&)>& body)
{
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.expect(false, std::string("exception: ") + e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (limit_ms > 0) {
        out.expect(ms < limit_ms, "took " + std::to_string(ms) + " ms");
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1f ms", ms);
    std::cout << (out.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " (" << timing << ")";
    if (!out.ok) {
        std::cout << " -- " << out.detail;
        ++failures;
    }
    std::cout << "\n";
}

std::string run_corpus(const std::string& name, EngineOptions engine = {})
{
    return run_source(read_file(corpus_path(name)), engine);
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

// ---- oracles ---------------------------------------------------------------

std::int64_t naturals_at(std::int64_t seed, std::int64_t d)
{
    std::int64_t n = seed;
    for (std::int64_t i = 0; i < d; ++i) {
        n += 1;
    }
    return n;
}

std::vector<std::int64_t> primes_oracle(std::size_t count)
{
    std::vector<std::int64_t> out;
    for (std::int64_t n = 2; out.size() < count; ++n) {
        bool prime = true;
        for (std::int64_t p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) {
            out.push_back(n);
        }
    }
    return out;
}

std::vector<std::int64_t> hamming_oracle(std::size_t count)
{
    std::vector<std::int64_t> out{1};
    std::deque<std::int64_t> q2{2}, q3{3}, q5{5};
    while (out.size() < count) {
        std::int64_t next = std::min({q2.front(), q3.front(), q5.front()});
        out.push_back(next);
        for (auto* q : {&q2, &q3, &q5}) {
            if (q->front() == next) {
                q->pop_front();
            }
        }
        q2.push_back(next * 2);
        q3.push_back(next * 3);
        q5.push_back(next * 5);
    }
    return out;
}

struct State {
    double t, y, v, a;
};

std::vector<State> euler_oracle()
{
    const double k = 8, m = 2, dt = 0.2;
    double t = 0, y = 0, v = 2.8, a = -k * y / m;
    std::vector<State> out{{t, y, v, a}};
    for (int i = 1; i <= 5; i++) {
        t = t + dt;
        y = y + v * dt;
        v = v + a * dt;
        a = -k * y / m;
        out.push_back({t, y, v, a});
    }
    return out;
}

std::vector<State> feynman_oracle()
{
    const double k = 8, m = 2, dt = 0.2;
    double t = 0, y = 0, v = 2.8, a = -k * y / m;
    v = v + a * dt / 2;
    std::vector<State> out;
    for (int i = 1; i <= 5; i++) {
        t = t + dt;
        y = y + v * dt;
        a = -k * y / m;
        v = v + a * dt;
        out.push_back({t, y, v, a});
    }
    return out;
}

bool parse_state(const std::string& line, State& s)
{
    return std::sscanf(line.c_str(), "t=%lf y=%lf v=%lf a=%lf", &s.t, &s.y, &s.v, &s.a) == 4;
}

bool close(double got, double want)
{
    double scale = std::max(std::fabs(want), 1e-300);
    return got == want || std::fabs(got - want) / scale <= 1e-12;
}

void compare_states(Outcome& o, const std::string& name, const std::string& output, const std::vector<State>& want)
{
    auto lines = lines_of(output);
    o.expect(lines.size() == want.size(), name + ": line count " + std::to_string(lines.size()));
    for (std::size_t i = 0; i < lines.size() && i < want.size(); ++i) {
        State s{};
        o.expect(parse_state(lines[i], s), name + ": unparsable line " + lines[i]);
        bool ok = close(s.t, want[i].t) && close(s.y, want[i].y) && close(s.v, want[i].v) && close(s.a, want[i].a);
        o.expect(ok, name + ": mismatch at line " + std::to_string(i + 1) + ": " + lines[i]);
    }
}

std::vector<std::string> traffic_oracle(int n)
{
    const std::string names[] = {"GREEN", "YELLOW", "RED"};
    const int ticks[] = {5, 1, 8};
    int state = 2;
    int timer = 8;
    std::vector<std::string> out{names[state]};
    while (static_cast<int>(out.size()) < n) {
        int t = timer - 1;
        if (t <= 0) {
            state = (state + 1) % 3;
            t = ticks[state];
        }
        timer = t;
        out.push_back(names[state]);
    }
    return out;
}

// ---- random stream programs ------------------------------------------------

// a * t * t + b * t + c, all coefficients non-negative.
struct IntStream {
    std::int64_t a, b, c;
    std::int64_t at(std::int64_t t) const { return a * t * t + b * t + c; }
    std::string text() const
    {
        return "(" + std::to_string(a) + " * #.d * #.d + " + std::to_string(b) + " * #.d + " + std::to_string(c) + ")";
    }
};

// (t + offset) % period < width with 1 <= width <= period: true infinitely often.
struct BoolStream {
    std::int64_t offset, period, width;
    bool at(std::int64_t t) const { return (t + offset) % period < width; }
    std::string text() const
    {
        return "((#.d + " + std::to_string(offset) + ") % " + std::to_string(period) + " < " + std::to_string(width) +
               ")";
    }
};

std::int64_t first_true_from(const BoolStream& y, std::int64_t s)
{
    while (!y.at(s)) {
        ++s;
    }
    return s;
}

// Position of the t-th true value of y.
std::int64_t wvr_index(const BoolStream& y, std::int64_t t)
{
    std::int64_t pos = first_true_from(y, 0);
    for (std::int64_t i = 1; i <= t; ++i) {
        pos = first_true_from(y, pos + 1);
    }
    return pos;
}

// How many of y(0..t-1) are true.
std::int64_t upon_index(const BoolStream& y, std::int64_t t)
{
    std::int64_t w = 0;
    for (std::int64_t i = 0; i < t; ++i) {
        w += y.at(i) ? 1 : 0;
    }
    return w;
}

std::int64_t operator_oracle(const std::string& op, const IntStream& x, const IntStream& x2, const BoolStream& y,
                             std::int64_t t)
{
    if (op == "first") {
        return x.at(0);
    }
    if (op == "next") {
        return x.at(t + 1);
    }
    if (op == "fby") {
        return t <= 0 ? x.at(t) : x2.at(t - 1);
    }
    if (op == "wvr") {
        return x.at(wvr_index(y, t));
    }
    if (op == "upon") {
        return x.at(upon_index(y, t));
    }
    return x.at(first_true_from(y, 0));
}

std::string operator_program(const std::string& op, const IntStream& x, const IntStream& x2, const BoolStream& y)
{
    if (op == "first" || op == "next") {
        return op + ".d " + x.text();
    }
    if (op == "fby") {
        return x.text() + " fby.d " + x2.text();
    }
    return x.text() + " " + op + ".d " + y.text();
}

// ---- type bridge -------------------------------------------------------------

bool raises_type_error(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const RuntimeError& e) {
        return e.message().rfind("run-time type check semantic error", 0) == 0;
    }
    return false;
}

std::string compile_error_of(const std::string& source)
{
    try {
        compile_program(source, "t.hyb");
    } catch (const CompileError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

int main()
{
    criterion(1, "seed-42 natural numbers print N=44", 1000, [](Outcome& o) {
        std::string out = run_corpus("naturals42.hyb");
        o.expect(out == "N=44\n", "got " + out);
    });

    criterion(2, "natural numbers match the unrolled recurrence", 1000, [](Outcome& o) {
        std::int64_t f = 2;
        std::int64_t want = ((naturals_at(1, f) - 1) + (naturals_at(1, f) + 1)) / 2;
        std::string out = run_corpus("naturals.hyb");
        o.expect(out == "N=" + std::to_string(want) + "\n", "got " + out);
    });

    criterion(3, "sieve yields the first ten primes", 2000, [](Outcome& o) {
        std::string want;
        for (auto p : primes_oracle(10)) {
            want += std::to_string(p) + "\n";
        }
        std::string out = run_corpus("prime.hyb");
        o.expect(out == want, "got " + out);
    });

    criterion(4, "Hamming stream yields its first ten values", 2000, [](Outcome& o) {
        std::string want;
        for (auto h : hamming_oracle(10)) {
            want += std::to_string(h) + "\n";
        }
        std::string out = run_corpus("hamming.hyb");
        o.expect(out == want, "got " + out);
    });

    criterion(5, "Euler and Feynman streams match the loop oracles", 2000, [](Outcome& o) {
        compare_states(o, "euler", run_corpus("euler.hyb"), euler_oracle());
        auto feynman = feynman_oracle();
        compare_states(o, "feynman", run_corpus("feynman.hyb"), feynman);
        o.expect(close(feynman.front().v, 2.352), "half-step velocity " + std::to_string(feynman.front().v));
    });

    criterion(6, "traffic light follows the timer automaton", 0, [](Outcome& o) {
        std::string want;
        for (const auto& s : traffic_oracle(20)) {
            want += s + "\n";
        }
        std::string out = run_corpus("trafficlight.hyb");
        o.expect(out == want, "got " + out);
    });

    criterion(7, "warehouse keeps demands linear and does not change output", 0, [](Outcome& o) {
        auto program = compile_program(read_file(corpus_path("naturals.hyb")), "naturals.hyb");
        const SegmentInfo* seg = program->member_segment("GIPLtest", "N");
        o.expect(seg != nullptr, "no segment for N");
        if (!seg) {
            return;
        }
        NodeId body = 0;
        for (const auto& [id, node] : seg->geer->nodes) {
            if (node->kind == lucid::ExprKind::Conditional) {
                body = id;
            }
        }
        Interpreter interp(*program);
        ObjectHandle obj = interp.construct("GIPLtest", {});
        Value v = interp.engine().eval_dot_member(Value::object(obj), "N", Context{{"d", 100}}, "GIPLtest");
        o.expect(v == Value::integer(naturals_at(1, 100)), "N at d:100 is " + v.to_string());
        auto evaluations = interp.engine().computations(*seg->geer, body);
        o.expect(evaluations <= 101, "body evaluated " + std::to_string(evaluations) + " times");

        Geer twice = compile_lucid(
            "F where dimension d; F = if #.d <= 0 then 1 else F @[d: #.d - 1] + F @[d: #.d - 1] fi; end",
            Context{{"d", 0}});
        EngineOptions off;
        off.warehouse = false;
        Engine slow(off);
        Value r = slow.eval(twice, Context{{"d", 10}});
        o.expect(r == Value::integer(1 << 10), "doubly recursive stream gave " + r.to_string());
        o.expect(slow.node_evaluations() >= (1u << 10),
                 "only " + std::to_string(slow.node_evaluations()) + " node evaluations without the warehouse");

        for (const char* name : kCorpus) {
            o.expect(run_corpus(name) == run_corpus(name, off), std::string(name) + " differs without the warehouse");
        }
    });

    criterion(8, "Indexical operators agree with their direct definitions", 0, [](Outcome& o) {
        std::mt19937_64 rng(8);
        auto pick = [&](std::int64_t lo, std::int64_t hi) {
            return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
        };
        for (const std::string op : {"first", "next", "fby", "wvr", "upon", "asa"}) {
            for (int i = 0; i < 100; ++i) {
                IntStream x{pick(0, 3), pick(0, 9), pick(0, 20)};
                IntStream x2{pick(0, 3), pick(0, 9), pick(0, 20)};
                std::int64_t period = pick(1, 5);
                BoolStream y{pick(0, 9), period, pick(1, period)};
                std::string text = operator_program(op, x, x2, y);
                Geer g = compile_lucid(text, Context{{"d", 0}}, "INDEXICALLUCID");
                Engine e;
                for (std::int64_t t = 0; t <= 10; ++t) {
                    Value got = e.eval(g, Context{{"d", t}});
                    std::int64_t want = operator_oracle(op, x, x2, y, t);
                    o.expect(got == Value::integer(want),
                             text + " at d:" + std::to_string(t) + " gave " + got.to_string() + ", expected " +
                                 std::to_string(want));
                }
            }
        }
    });

    criterion(9, "translation preserves output and emits one slot per segment", 0, [](Outcome& o) {
        for (const char* name : kCorpus) {
            std::string src = read_file(corpus_path(name));
            auto program = compile_program(src, name);
            std::string pure = translate(*program);
            std::size_t k = program->segments.size();
            o.expect(count_of(pure, "static __Program") == k, std::string(name) + ": program slot count");
            o.expect(count_of(pure, "new __Engine(") == k, std::string(name) + ": engine handle count");
            o.expect(count_of(pure, "__compile(") == k, std::string(name) + ": compile call count");
            o.expect(count_of(pure, "__work()") == 1, std::string(name) + ": work wrapper");
            o.expect(pure.find("/@") == std::string::npos, std::string(name) + ": segment left behind");
            o.expect(run_program(*compile_program(pure, "x.pure.hyb")) == run_program(*program),
                     std::string(name) + ": translated output differs");
        }
    });

    criterion(10, "type bridge round-trips and rejects unmappable values", 0, [](Outcome& o) {
        std::mt19937_64 rng(10);
        std::uniform_int_distribution<std::int64_t> ints(std::numeric_limits<std::int32_t>::min(),
                                                         std::numeric_limits<std::int32_t>::max());
        std::uniform_real_distribution<double> reals(-1e9, 1e9);
        for (int i = 0; i < 1000; ++i) {
            HostValue h;
            std::string type;
            switch (i % 9) {
            case 0: h = HostValue::make_int(ints(rng)); type = "int"; break;
            case 1: h = HostValue::make_byte(ints(rng) % 128); type = "byte"; break;
            case 2: h = HostValue::make_short(ints(rng) % 32768); type = "short"; break;
            case 3: h = HostValue::make_double(reals(rng)); type = "double"; break;
            case 4: h = HostValue::make_float(static_cast<float>(reals(rng))); type = "float"; break;
            case 5: h = HostValue::make_bool(rng() & 1); type = "boolean"; break;
            case 6: h = HostValue::make_char(static_cast<char>('a' + rng() % 26)); type = "char"; break;
            case 7: h = HostValue::make_string("s" + std::to_string(ints(rng))); type = "String"; break;
            default: {
                auto arr = std::make_shared<HostArray>();
                arr->element_type = "int";
                for (int j = 0; j < 3; ++j) {
                    arr->elements.push_back(HostValue::make_int(ints(rng)));
                }
                h = HostValue::make_array(arr);
                o.expect(to_host(to_lucid(h), "int", 1) == h, "int[] round trip");
                continue;
            }
            }
            o.expect(to_host(to_lucid(h), type) == h, type + " round trip of " + h.to_string());
        }
        o.expect(to_host(to_lucid(HostValue::void_value()), "void").kind == HostKind::Void, "void round trip");
        o.expect(raises_type_error([] { to_lucid(HostValue::make_long(1)); }), "long accepted host to Lucid");
        o.expect(raises_type_error([] { to_host(Value::integer(1), "long"); }), "long accepted Lucid to host");
        o.expect(raises_type_error([] { to_host(Value::real(2.5), "int"); }), "double narrowed to int");
        o.expect(raises_type_error([] { to_host(Value::integer(128), "byte"); }), "byte overflow");
        o.expect(raises_type_error([] { to_host(Value::integer(-129), "byte"); }), "byte underflow");
        o.expect(raises_type_error([] { to_host(Value::integer(32768), "short"); }), "short overflow");
        o.expect(raises_type_error([] { to_host(Value::integer(-32769), "short"); }), "short underflow");
        o.expect(to_host(Value::integer(127), "byte") == HostValue::make_byte(127), "byte max");
        o.expect(to_host(Value::integer(-128), "byte") == HostValue::make_byte(-128), "byte min");
        o.expect(to_host(Value::integer(32767), "short") == HostValue::make_short(32767), "short max");
        o.expect(to_host(Value::integer(-32768), "short") == HostValue::make_short(-32768), "short min");
    });

    criterion(11, "diagnostics name undefined dimensions and duplicates", 0, [](Outcome& o) {
        std::string undefined = compile_error_of(read_file(std::string(JOOIP_CORPUS_DIR) +
                                                           "/../tests/cli/undefined_dimension.hyb"));
        o.expect(undefined.find("undefined dimension") != std::string::npos, "got: " + undefined);
        std::string duplicate = compile_error_of("class A { int x = 1; double x = 2.0; }");
        o.expect(duplicate.find("multiply defined") != std::string::npos, "got: " + duplicate);
        std::string local = compile_error_of("class A { int x = /@ X where X = 1; X = 2; end @/; }");
        o.expect(local.find("multiply defined") != std::string::npos, "got: " + local);
    });

    return failures == 0 ? 0 : 1;
}
