#include "jooip/symbol_table.hpp"

#include "jooip/type_bridge.hpp"

namespace jooip {

const IdentifierSymbolEntry* ClassSymbolTable::find(const std::string& id) const
{
    auto it = members.find(id);
    return it == members.end() ? nullptr : &it->second;
}

namespace {

std::string method_source(const host::MethodDecl& m)
{
    std::string out = m.return_type.to_string() + " " + m.name + "(";
    for (std::size_t i = 0; i < m.params.size(); ++i) {
        out += (i ? ", " : "") + m.params[i].type.to_string() + " " + m.params[i].name;
    }
    return out + ")";
}

}  // namespace

SymbolTables build_symbol_tables(const host::Unit& unit)
{
    SymbolTables tables;
    auto is_class = [&](const std::string& name) { return unit.find_class(name) != nullptr; };

    for (const auto& c : unit.classes) {
        if (tables.count(c.name) || c.name == kFreeFunctionTable) {
            throw CompileError("multiply defined class " + c.name, c.loc, unit.file);
        }
        ClassSymbolTable t;
        t.class_name = c.name;
        if (!c.parent.empty()) {
            t.parent_name = c.parent;
        }
        t.interface_names = c.interfaces;
        for (const auto& f : c.fields) {
            IdentifierSymbolEntry e;
            e.id = f.name;
            e.kind = IdentifierSymbolEntry::Kind::Field;
            e.is_host_member = !f.intensional();
            e.mapped_type = type_row(f.type.name, f.type.array_dims, is_class(f.type.name));
            e.owning_class = c.name;
            e.decl_source = f.intensional() ? unit.segment(f.init->segment).text : f.source;
            e.is_static = f.is_static;
            e.visibility = f.visibility;
            if (!t.members.emplace(f.name, e).second) {
                throw CompileError("multiply defined identifier " + c.name + "." + f.name, f.loc, unit.file);
            }
        }
        for (const auto& m : c.methods) {
            if (m.is_constructor) {
                continue;
            }
            IdentifierSymbolEntry e;
            e.id = m.name;
            e.kind = IdentifierSymbolEntry::Kind::Method;
            e.mapped_type = type_row(m.return_type.name, m.return_type.array_dims, is_class(m.return_type.name));
            e.owning_class = c.name;
            e.decl_source = method_source(m);
            e.is_static = m.is_static;
            e.visibility = m.visibility;
            if (!t.members.emplace(m.name, e).second) {
                throw CompileError("multiply defined identifier " + c.name + "." + m.name, m.loc, unit.file);
            }
        }
        tables.emplace(c.name, std::move(t));
    }

    ClassSymbolTable ffw;
    ffw.class_name = kFreeFunctionTable;
    for (const auto& f : unit.functions) {
        IdentifierSymbolEntry e;
        e.id = f.name;
        e.kind = IdentifierSymbolEntry::Kind::FreeFunction;
        e.mapped_type = type_row(f.return_type.name, f.return_type.array_dims, is_class(f.return_type.name));
        e.owning_class = kFreeFunctionTable;
        e.decl_source = method_source(f);
        e.is_static = true;
        e.visibility = host::Visibility::Public;
        if (!ffw.members.emplace(f.name, e).second) {
            throw CompileError("multiply defined free function " + f.name, f.loc, unit.file);
        }
    }
    tables.emplace(kFreeFunctionTable, std::move(ffw));
    return tables;
}

bool symbol_tables_consistent(const SymbolTables& tables)
{
    for (const auto& [name, table] : tables) {
        (void)name;
        for (const auto& [id, e] : table.members) {
            (void)id;
            bool lucid_side = e.ast_entry.has_value() && e.lucid_dictionary != nullptr;
            bool host_side = !e.ast_entry.has_value() && e.lucid_dictionary == nullptr;
            if (e.is_host_member ? !host_side : !lucid_side) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace jooip
