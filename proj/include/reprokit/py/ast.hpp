// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace reprokit::py {

// One uniform node shape for the whole tree keeps structural hashing,
// counting and def-use walks generic. Children layouts:
//
//   Module            statements...
//   FunctionDef       text=name; DecoratorList, Params, [ReturnAnnotation], Body
//   AsyncFunctionDef  same as FunctionDef
//   ClassDef          text=name; DecoratorList, Arguments (bases/keywords), Body
//   Params            Param | StarParam | DoubleStarParam ... ('/' and bare '*'
//                     markers are dropped)
//   Param             text=name; [Annotation], [Default]
//   StarParam         text=name ("" for a bare '*'); [Annotation]
//   DoubleStarParam   text=name; [Annotation]
//   If                test, Body, [OrElse]     (elif nests an If in OrElse)
//   While             test, Body, [OrElse]
//   For / AsyncFor    target, iter, Body, [OrElse]
//   Try               Body, ExceptHandler..., [OrElse], [FinallyBody]
//   ExceptHandler     text=alias or ""; [type-expr], Body
//   With / AsyncWith  WithItem..., Body
//   WithItem          context-expr, [target]
//   Assign            target..., value        (value is the last child)
//   AugAssign         text=op (e.g. "+="); target, value
//   AnnAssign         target, Annotation, [value]
//   ExprStmt/Return/Raise/Assert/Delete/Yield/YieldFrom/Await  expr children
//   Global/Nonlocal   Name children
//   Import            ImportAlias...
//   ImportFrom        text=dots+module (e.g. "..util", "."); ImportAlias...
//   ImportAlias       text=dotted name or "*"; [Alias]
//   Alias             text=local name
//   BoolOp            text="and"|"or"; operands...
//   BinOp             text=op; left, right
//   UnaryOp           text=op ("-","+","~","not"); operand
//   Compare           left, CmpOp...
//   CmpOp             text=op ("<", "is not", ...); operand
//   Call              func, then positional exprs / Starred / Keyword / DoubleStarred
//   Keyword           text=keyword name; value
//   Attribute         text=attribute name; value
//   Subscript         value, index-expr
//   Slice             lower, upper, step (Empty placeholders when omitted)
//   Lambda            Params, body-expr
//   IfExp             body, test, orelse
//   Dict              DictItem...           (DictItem: key, value; Empty key = **)
//   ListComp/SetComp/GeneratorExp  element, CompFor...
//   DictComp          DictItem, CompFor...
//   CompFor           target, iter, CompIf...
//   CompIf            condition
//   NamedExpr         target (Name), value
//   FString           Str | FormattedValue parts   (FormattedValue: expr)
//   Name/Number/Str/Const  leaves; text = identifier or literal spelling
enum class NodeKind {
    Module, FunctionDef, AsyncFunctionDef, ClassDef, Params, Param, StarParam,
    DoubleStarParam, ReturnAnnotation, Annotation, Default, DecoratorList,
    Arguments, Body, OrElse, FinallyBody, ExceptHandler, WithItem, Assign,
    AugAssign, AnnAssign, ExprStmt, Return, Raise, Assert, Delete, Pass,
    Break, Continue, Global, Nonlocal, Import, ImportFrom, ImportAlias, Alias,
    If, While, For, AsyncFor, Try, With, AsyncWith, BoolOp, BinOp, UnaryOp,
    Lambda, IfExp, Dict, DictItem, Set, List, Tuple, ListComp, SetComp,
    DictComp, GeneratorExp, CompFor, CompIf, Yield, YieldFrom, Await, Compare,
    CmpOp, Call, Keyword, Starred, DoubleStarred, Attribute, Subscript, Slice,
    Name, Number, Str, FString, FormattedValue, Const, NamedExpr, Empty,
};

struct AstNode {
    NodeKind kind = NodeKind::Empty;
    std::string text;
    int line = 0;      // 1-based; 0 for synthetic nodes
    int col = 0;
    int end_line = 0;
    std::vector<AstNode> children;
};

const char* kind_name(NodeKind k);

// Pre-order traversal.
void walk(const AstNode& node, const std::function<void(const AstNode&)>& fn);

// First direct child of the given kind, or nullptr.
const AstNode* find_child(const AstNode& node, NodeKind kind);

} // namespace reprokit::py
