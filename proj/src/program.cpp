#include "jooip/program.hpp"

#include "jooip/host_parser.hpp"

#include <map>

namespace jooip {

const SegmentInfo* Program::member_segment(const std::string& class_name, const std::string& member) const
{
    for (const auto& s : segments) {
        if (s.class_name == class_name && s.member == member && !member.empty()) {
            return &s;
        }
    }
    return nullptr;
}

namespace {

SourceLoc loc_at(const std::string& source, std::size_t offset)
{
    SourceLoc loc;
    for (std::size_t i = 0; i < offset && i < source.size(); ++i) {
        if (source[i] == '\n') {
            ++loc.line;
            loc.column = 1;
        } else {
            ++loc.column;
        }
    }
    return loc;
}

class SegmentCollector {
public:
    explicit SegmentCollector(const host::Unit& unit) : unit_(unit), out_(unit.segments.size()) {}

    std::vector<SegmentInfo> run()
    {
        for (const auto& c : unit_.classes) {
            class_name_ = c.name;
            for (const auto& f : c.fields) {
                if (!f.init) {
                    continue;
                }
                static_ = f.is_static;
                locals_.clear();
                if (f.intensional()) {
                    record(*f.init, f.name, f.type);
                } else {
                    expr(*f.init);
                }
            }
            for (const auto& b : c.static_blocks) {
                static_ = true;
                locals_.clear();
                stmt(*b);
            }
            for (const auto& m : c.methods) {
                method(m);
            }
        }
        class_name_.clear();
        for (const auto& f : unit_.functions) {
            method(f);
        }
        for (std::size_t i = 0; i < out_.size(); ++i) {
            if (out_[i].index == 0) {
                const auto& s = unit_.segments[i];
                throw CompileError("Lucid segment is not allowed here", s.loc, unit_.file);
            }
        }
        return std::move(out_);
    }

private:
    void method(const host::MethodDecl& m)
    {
        static_ = m.is_static;
        locals_.clear();
        for (const auto& p : m.params) {
            locals_.push_back(p.name);
        }
        stmt(*m.body);
    }

    void record(const host::Expr& e, const std::string& member, const host::TypeRef& type)
    {
        const host::Segment& s = unit_.segment(e.segment);
        SegmentInfo& info = out_.at(e.segment - 1);
        info.index = s.index;
        info.tag = s.tag;
        info.text = s.text;
        info.origin = loc_at(unit_.source, s.end - 2 - s.text.size());
        info.class_name = class_name_;
        info.member = member;
        info.member_type = type;
        info.static_context = static_;
        info.locals = locals_;
    }

    void expr(const host::Expr& e)
    {
        if (e.kind == host::ExprKind::Segment) {
            record(e, "", {});
            return;
        }
        for (const auto& op : e.operands) {
            expr(*op);
        }
    }

    void stmt(const host::Stmt& s)
    {
        std::size_t mark = locals_.size();
        switch (s.kind) {
        case host::StmtKind::Block:
            for (const auto& b : s.body) {
                stmt(*b);
            }
            locals_.resize(mark);
            return;
        case host::StmtKind::LocalDecl:
            for (const auto& [name, init] : s.vars) {
                if (init) {
                    expr(*init);
                }
                locals_.push_back(name);
            }
            return;
        case host::StmtKind::For:
            if (s.init) {
                stmt(*s.init);
            }
            if (s.expr) {
                expr(*s.expr);
            }
            for (const auto& u : s.update) {
                expr(*u);
            }
            stmt(*s.then_branch);
            locals_.resize(mark);
            return;
        default:
            break;
        }
        if (s.expr) {
            expr(*s.expr);
        }
        if (s.then_branch) {
            stmt(*s.then_branch);
            locals_.resize(mark);
        }
        if (s.else_branch) {
            stmt(*s.else_branch);
            locals_.resize(mark);
        }
    }

    const host::Unit& unit_;
    std::vector<SegmentInfo> out_;
    std::string class_name_;
    bool static_ = false;
    std::vector<std::string> locals_;
};

}  // namespace

std::vector<SegmentInfo> collect_segments(const host::Unit& unit)
{
    return SegmentCollector(unit).run();
}

HostEnv host_env_for(const host::Unit& unit, const std::vector<SegmentInfo>& segments, const SegmentInfo& segment)
{
    HostEnv env;
    env.class_name = segment.class_name;
    env.static_context = segment.static_context;
    env.locals = segment.locals;
    if (const host::ClassDecl* c = unit.find_class(segment.class_name)) {
        for (const auto& f : c->fields) {
            if (f.name.rfind("__", 0) == 0) {
                continue;
            }
            bool intensional = false;
            for (const auto& s : segments) {
                if (s.class_name == c->name && s.member == f.name) {
                    intensional = true;
                }
            }
            env.fields.push_back({f.name, intensional, f.is_static});
        }
    }
    for (const auto& f : unit.functions) {
        env.free_functions.push_back({f.name, f.params.size()});
    }
    return env;
}

void compile_segments(const host::Unit& unit, std::vector<SegmentInfo>& segments, std::vector<std::string>& warnings)
{
    std::map<std::pair<std::string, std::string>, DimSet> estimate;
    auto resolver_for = [&](const std::string& class_name) {
        return [&estimate, class_name](const std::string& member) {
            auto it = estimate.find({class_name, member});
            return it == estimate.end() ? DimSet{} : it->second;
        };
    };

    for (auto& seg : segments) {
        try {
            lucid::SegmentParse parsed = lucid::parse_segment(seg.tag, seg.text);
            seg.dialect = parsed.dialect;
            for (const auto& w : parsed.warnings) {
                warnings.push_back(unit.file + ":" + std::to_string(seg.origin.line) + ":" +
                                   std::to_string(seg.origin.column) + ": warning: " + w);
            }
            CompileOptions opts;
            opts.source = seg.text;
            opts.dot_notation = parsed.dot_notation;
            opts.label = "seg" + std::to_string(seg.index);
            HostEnv env = host_env_for(unit, segments, seg);
            seg.geer = std::make_shared<Geer>(compile(parsed.ast, env, opts, resolver_for(seg.class_name)));
        } catch (const CompileError& e) {
            throw e.relocated(seg.origin, unit.file);
        }
    }

    // Member free dimensions depend on each other through captures; grow
    // the estimates from empty until nothing changes.
    for (int round = 0;; ++round) {
        if (round > 10000) {
            throw InternalError("member free-dimension analysis did not converge");
        }
        bool changed = false;
        for (auto& seg : segments) {
            analyze_free_dims(*seg.geer, resolver_for(seg.class_name));
            if (seg.member.empty()) {
                continue;
            }
            DimSet root = seg.geer->free_dimensions(seg.geer->root->id);
            DimSet& slot = estimate[{seg.class_name, seg.member}];
            DimSet merged = slot;
            merged.unite(root);
            if (!(merged == slot)) {
                slot = merged;
                changed = true;
            }
        }
        if (!changed) {
            break;
        }
    }
}

std::unique_ptr<Program> compile_program(const std::string& source, const std::string& file)
{
    auto program = std::make_unique<Program>();
    program->unit = host::parse_host(source, file);
    program->tables = build_symbol_tables(program->unit);
    program->segments = collect_segments(program->unit);
    compile_segments(program->unit, program->segments, program->warnings);
    for (const auto& seg : program->segments) {
        if (seg.member.empty()) {
            continue;
        }
        IdentifierSymbolEntry& entry = program->tables.at(seg.class_name).members.at(seg.member);
        entry.ast_entry = seg.geer->root->id;
        entry.lucid_dictionary = &seg.geer->dictionary;
    }
    return program;
}

}  // namespace jooip
