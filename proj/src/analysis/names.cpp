// SPDX-License-Identifier: Apache-2.0
#include "reprokit/analysis/names.hpp"

namespace reprokit {

namespace {

using py::AstNode;
using py::NodeKind;

class EventWalker {
public:
    std::vector<NameEvent> events;

    void load(const AstNode& n) {
        switch (n.kind) {
            case NodeKind::Name:
                emit(n.text, n.line, NameEventKind::Use);
                return;
            case NodeKind::Annotation:
            case NodeKind::ReturnAnnotation:
                return;  // type expressions are not runtime reads
            case NodeKind::Assign: {
                load(n.children.back());
                for (size_t i = 0; i + 1 < n.children.size(); ++i) store(n.children[i]);
                return;
            }
            case NodeKind::AugAssign: {
                load(n.children[1]);
                const AstNode& target = n.children[0];
                if (target.kind == NodeKind::Name) {
                    emit(target.text, target.line, NameEventKind::Use);
                    emit(target.text, target.line, NameEventKind::Mod);
                } else {
                    store(target);
                }
                return;
            }
            case NodeKind::AnnAssign: {
                if (n.children.size() > 2) {
                    load(n.children[2]);
                    store(n.children[0]);
                }
                return;  // bare annotation binds nothing
            }
            case NodeKind::NamedExpr: {
                load(n.children[1]);
                store(n.children[0]);
                return;
            }
            case NodeKind::For:
            case NodeKind::AsyncFor: {
                load(n.children[1]);   // iterable
                store(n.children[0]);  // loop target
                for (size_t i = 2; i < n.children.size(); ++i) load(n.children[i]);
                return;
            }
            case NodeKind::WithItem: {
                load(n.children[0]);
                if (n.children.size() > 1) store(n.children[1]);
                return;
            }
            case NodeKind::CompFor: {
                load(n.children[1]);
                store(n.children[0]);
                for (size_t i = 2; i < n.children.size(); ++i) load(n.children[i]);
                return;
            }
            case NodeKind::FunctionDef:
            case NodeKind::AsyncFunctionDef: {
                emit(n.text, n.line, NameEventKind::Def);
                for (const auto& c : n.children) load(c);  // params handle themselves
                return;
            }
            case NodeKind::ClassDef: {
                emit(n.text, n.line, NameEventKind::Def);
                for (const auto& c : n.children) load(c);
                return;
            }
            case NodeKind::Param:
            case NodeKind::StarParam:
            case NodeKind::DoubleStarParam: {
                if (!n.text.empty()) emit(n.text, n.line, NameEventKind::Def);
                if (const AstNode* def = py::find_child(n, NodeKind::Default)) load(*def);
                return;
            }
            case NodeKind::Import:
            case NodeKind::ImportFrom: {
                for (const auto& alias : n.children) {
                    if (alias.kind != NodeKind::ImportAlias || alias.text == "*") continue;
                    if (const AstNode* as = py::find_child(alias, NodeKind::Alias)) {
                        emit(as->text, alias.line, NameEventKind::Def);
                    } else {
                        std::string root = alias.text.substr(0, alias.text.find('.'));
                        emit(root, alias.line, NameEventKind::Def);
                    }
                }
                return;
            }
            case NodeKind::ExceptHandler: {
                if (!n.text.empty()) emit(n.text, n.line, NameEventKind::Def);
                for (const auto& c : n.children) load(c);
                return;
            }
            case NodeKind::Delete: {
                for (const auto& t : n.children) store(t, NameEventKind::Mod);
                return;
            }
            case NodeKind::Global:
            case NodeKind::Nonlocal:
                return;  // declarations, not events
            case NodeKind::Keyword:  // keyword name is not a variable
            case NodeKind::Attribute:
                if (n.kind == NodeKind::Attribute) {
                    load(n.children[0]);
                    return;
                }
                for (const auto& c : n.children) load(c);
                return;
            default:
                for (const auto& c : n.children) load(c);
                return;
        }
    }

    // Assignment-target context. `kind` is what a plain Name becomes.
    void store(const AstNode& n, NameEventKind kind = NameEventKind::Def) {
        switch (n.kind) {
            case NodeKind::Name:
                emit(n.text, n.line, kind);
                return;
            case NodeKind::Tuple:
            case NodeKind::List:
                for (const auto& c : n.children) store(c, kind);
                return;
            case NodeKind::Starred:
                store(n.children[0], kind);
                return;
            case NodeKind::Attribute: {
                load(n.children[0]);  // the object is read to reach the attribute
                if (const std::string root = chain_root(n); !root.empty())
                    emit(root, n.line, NameEventKind::Mod);
                return;
            }
            case NodeKind::Subscript: {
                load(n.children[0]);
                load(n.children[1]);
                if (const std::string root = chain_root(n); !root.empty())
                    emit(root, n.line, NameEventKind::Mod);
                return;
            }
            default:
                load(n);
                return;
        }
    }

private:
    static std::string chain_root(const AstNode& n) {
        const AstNode* cur = &n;
        while (cur->kind == NodeKind::Attribute || cur->kind == NodeKind::Subscript)
            cur = &cur->children[0];
        return cur->kind == NodeKind::Name ? cur->text : std::string();
    }

    void emit(const std::string& name, int line, NameEventKind kind) {
        if (!name.empty()) events.push_back({name, line, kind});
    }
};

}  // namespace

std::vector<NameEvent> collect_name_events(const py::AstNode& node) {
    EventWalker w;
    w.load(node);
    return std::move(w.events);
}

} // namespace reprokit
