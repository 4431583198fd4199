// SPDX-License-Identifier: Apache-2.0
#include "reprokit/py/ast.hpp"

namespace reprokit::py {

const char* kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Module: return "Module";
        case NodeKind::FunctionDef: return "FunctionDef";
        case NodeKind::AsyncFunctionDef: return "AsyncFunctionDef";
        case NodeKind::ClassDef: return "ClassDef";
        case NodeKind::Params: return "Params";
        case NodeKind::Param: return "Param";
        case NodeKind::StarParam: return "StarParam";
        case NodeKind::DoubleStarParam: return "DoubleStarParam";
        case NodeKind::ReturnAnnotation: return "ReturnAnnotation";
        case NodeKind::Annotation: return "Annotation";
        case NodeKind::Default: return "Default";
        case NodeKind::DecoratorList: return "DecoratorList";
        case NodeKind::Arguments: return "Arguments";
        case NodeKind::Body: return "Body";
        case NodeKind::OrElse: return "OrElse";
        case NodeKind::FinallyBody: return "FinallyBody";
        case NodeKind::ExceptHandler: return "ExceptHandler";
        case NodeKind::WithItem: return "WithItem";
        case NodeKind::Assign: return "Assign";
        case NodeKind::AugAssign: return "AugAssign";
        case NodeKind::AnnAssign: return "AnnAssign";
        case NodeKind::ExprStmt: return "ExprStmt";
        case NodeKind::Return: return "Return";
        case NodeKind::Raise: return "Raise";
        case NodeKind::Assert: return "Assert";
        case NodeKind::Delete: return "Delete";
        case NodeKind::Pass: return "Pass";
        case NodeKind::Break: return "Break";
        case NodeKind::Continue: return "Continue";
        case NodeKind::Global: return "Global";
        case NodeKind::Nonlocal: return "Nonlocal";
        case NodeKind::Import: return "Import";
        case NodeKind::ImportFrom: return "ImportFrom";
        case NodeKind::ImportAlias: return "ImportAlias";
        case NodeKind::Alias: return "Alias";
        case NodeKind::If: return "If";
        case NodeKind::While: return "While";
        case NodeKind::For: return "For";
        case NodeKind::AsyncFor: return "AsyncFor";
        case NodeKind::Try: return "Try";
        case NodeKind::With: return "With";
        case NodeKind::AsyncWith: return "AsyncWith";
        case NodeKind::BoolOp: return "BoolOp";
        case NodeKind::BinOp: return "BinOp";
        case NodeKind::UnaryOp: return "UnaryOp";
        case NodeKind::Lambda: return "Lambda";
        case NodeKind::IfExp: return "IfExp";
        case NodeKind::Dict: return "Dict";
        case NodeKind::DictItem: return "DictItem";
        case NodeKind::Set: return "Set";
        case NodeKind::List: return "List";
        case NodeKind::Tuple: return "Tuple";
        case NodeKind::ListComp: return "ListComp";
        case NodeKind::SetComp: return "SetComp";
        case NodeKind::DictComp: return "DictComp";
        case NodeKind::GeneratorExp: return "GeneratorExp";
        case NodeKind::CompFor: return "CompFor";
        case NodeKind::CompIf: return "CompIf";
        case NodeKind::Yield: return "Yield";
        case NodeKind::YieldFrom: return "YieldFrom";
        case NodeKind::Await: return "Await";
        case NodeKind::Compare: return "Compare";
        case NodeKind::CmpOp: return "CmpOp";
        case NodeKind::Call: return "Call";
        case NodeKind::Keyword: return "Keyword";
        case NodeKind::Starred: return "Starred";
        case NodeKind::DoubleStarred: return "DoubleStarred";
        case NodeKind::Attribute: return "Attribute";
        case NodeKind::Subscript: return "Subscript";
        case NodeKind::Slice: return "Slice";
        case NodeKind::Name: return "Name";
        case NodeKind::Number: return "Number";
        case NodeKind::Str: return "Str";
        case NodeKind::FString: return "FString";
        case NodeKind::FormattedValue: return "FormattedValue";
        case NodeKind::Const: return "Const";
        case NodeKind::NamedExpr: return "NamedExpr";
        case NodeKind::Empty: return "Empty";
    }
    return "?";
}

void walk(const AstNode& node, const std::function<void(const AstNode&)>& fn) {
    fn(node);
    for (const auto& child : node.children) walk(child, fn);
}

const AstNode* find_child(const AstNode& node, NodeKind kind) {
    for (const auto& child : node.children)
        if (child.kind == kind) return &child;
    return nullptr;
}

} // namespace reprokit::py
