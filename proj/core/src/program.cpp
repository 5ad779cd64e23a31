#include "mazemate/program.hpp"

#include <cctype>
#include <charconv>
#include <utility>

#include "mazemate/errors.hpp"

namespace mazemate {

std::string_view action_keyword(Action a) noexcept {
    switch (a) {
        case Action::MoveForward: return "move";
        case Action::TurnLeft: return "turn_left";
        case Action::TurnRight: return "turn_right";
        case Action::TurnBack: return "turn_back";
        case Action::Attack: return "attack";
    }
    return "?";
}

std::string_view action_name(Action a) noexcept {
    switch (a) {
        case Action::MoveForward: return "MoveForward";
        case Action::TurnLeft: return "TurnLeft";
        case Action::TurnRight: return "TurnRight";
        case Action::TurnBack: return "TurnBack";
        case Action::Attack: return "Attack";
    }
    return "?";
}

std::optional<Action> action_from_keyword(std::string_view s) noexcept {
    for (Action a : kAllActions) {
        if (action_keyword(a) == s) return a;
    }
    return std::nullopt;
}

bool is_turn(Action a) noexcept {
    return a == Action::TurnLeft || a == Action::TurnRight || a == Action::TurnBack;
}

std::string_view condition_keyword(ConditionKind k) noexcept {
    switch (k) {
        case ConditionKind::PathAhead: return "path_ahead";
        case ConditionKind::MonsterAhead: return "monster_ahead";
        case ConditionKind::GemsRemaining: return "gems_remaining";
        case ConditionKind::AtGoal: return "at_goal";
    }
    return "?";
}

std::string condition_text(Condition c) {
    std::string out = c.negated ? "not " : "";
    out += condition_keyword(c.kind);
    return out;
}

Node Node::make_action(Action a) {
    Node n;
    n.kind = NodeKind::Action;
    n.action = a;
    return n;
}

Node Node::make_repeat(int count, std::vector<Node> body) {
    Node n;
    n.kind = NodeKind::Repeat;
    n.count = count;
    n.body = std::move(body);
    return n;
}

Node Node::make_while(Condition c, std::vector<Node> body) {
    Node n;
    n.kind = NodeKind::While;
    n.condition = c;
    n.body = std::move(body);
    return n;
}

Node Node::make_if(Condition c, std::vector<Node> then_body) {
    Node n;
    n.kind = NodeKind::If;
    n.condition = c;
    n.body = std::move(then_body);
    return n;
}

Node Node::make_if_else(Condition c, std::vector<Node> then_body, std::vector<Node> else_body) {
    Node n;
    n.kind = NodeKind::IfElse;
    n.condition = c;
    n.body = std::move(then_body);
    n.else_body = std::move(else_body);
    return n;
}

namespace {

enum class Tok { Word, Int, LBrace, RBrace, Sep, End };

struct Token {
    Tok kind = Tok::End;
    std::string_view text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n' || c == ';') {
                out.push_back({Tok::Sep, src_.substr(pos_, 1), line_, col_});
                advance();
            } else if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '{' || c == '}') {
                out.push_back({c == '{' ? Tok::LBrace : Tok::RBrace, src_.substr(pos_, 1), line_, col_});
                advance();
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                out.push_back(take(Tok::Int, [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; }));
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                out.push_back(take(Tok::Word, [](char ch) {
                    return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_';
                }));
            } else {
                throw SyntaxError(std::string("unexpected character '") + c + "'", line_, col_);
            }
        }
        out.push_back({Tok::End, {}, line_, col_});
        return out;
    }

private:
    template <typename Pred>
    Token take(Tok kind, Pred pred) {
        Token t{kind, {}, line_, col_};
        std::size_t begin = pos_;
        while (pos_ < src_.size() && pred(src_[pos_])) advance();
        t.text = src_.substr(begin, pos_ - begin);
        return t;
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Program parse() {
        Program p;
        skip_seps();
        if (peek().kind == Tok::End) fail(peek(), "expected at least one statement");
        while (peek().kind != Tok::End) {
            p.statements.push_back(statement(1));
            skip_seps();
        }
        return p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    void skip_seps() {
        while (peek().kind == Tok::Sep) ++pos_;
    }

    [[noreturn]] static void fail(const Token& t, const std::string& what) {
        throw SyntaxError(what, t.line, t.column);
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case Tok::End: return "end of input";
            case Tok::Sep: return t.text == ";" ? "';'" : "newline";
            default: return "'" + std::string(t.text) + "'";
        }
    }

    Node statement(int depth) {
        const Token& t = next();
        if (depth > kMaxProgramDepth) {
            throw LimitError("nesting depth exceeds " + std::to_string(kMaxProgramDepth) +
                             " at line " + std::to_string(t.line) + ", column " +
                             std::to_string(t.column));
        }
        if (t.kind != Tok::Word) fail(t, "expected a statement, found " + describe(t));
        if (auto a = action_from_keyword(t.text)) return Node::make_action(*a);
        if (t.text == "repeat") {
            const Token& n = next();
            if (n.kind != Tok::Int) fail(n, "expected a repeat count, found " + describe(n));
            int count = 0;
            auto [ptr, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), count);
            if (ec != std::errc{}) {
                throw LimitError("repeat count " + std::string(n.text) + " too large at line " +
                                 std::to_string(n.line) + ", column " + std::to_string(n.column));
            }
            if (count < 1) {
                throw LimitError("repeat count must be >= 1 at line " + std::to_string(n.line) +
                                 ", column " + std::to_string(n.column));
            }
            return Node::make_repeat(count, block(depth));
        }
        if (t.text == "while") {
            Condition c = condition();
            return Node::make_while(c, block(depth));
        }
        if (t.text == "if") {
            Condition c = condition();
            Block then_body = block(depth);
            std::size_t save = pos_;
            skip_seps();
            if (peek().kind == Tok::Word && peek().text == "else") {
                ++pos_;
                return Node::make_if_else(c, std::move(then_body), block(depth));
            }
            pos_ = save;
            return Node::make_if(c, std::move(then_body));
        }
        fail(t, "unknown statement " + describe(t));
    }

    Condition condition() {
        Condition c;
        const Token* t = &next();
        if (t->kind == Tok::Word && t->text == "not") {
            c.negated = true;
            t = &next();
        }
        if (t->kind == Tok::Word) {
            for (int k = 0; k < kConditionKindCount; ++k) {
                auto kind = static_cast<ConditionKind>(k);
                if (condition_keyword(kind) == t->text) {
                    c.kind = kind;
                    return c;
                }
            }
        }
        fail(*t, "expected a condition, found " + describe(*t));
    }

    Block block(int depth) {
        const Token& open = next();
        if (open.kind != Tok::LBrace) fail(open, "expected '{', found " + describe(open));
        Block body;
        skip_seps();
        if (peek().kind == Tok::RBrace) fail(peek(), "empty block");
        while (peek().kind != Tok::RBrace) {
            if (peek().kind == Tok::End) fail(peek(), "unterminated block, expected '}'");
            body.push_back(statement(depth + 1));
            skip_seps();
        }
        ++pos_;
        return body;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

void print_block(const Block& block, int indent, std::string& out);

void print_node(const Node& n, int indent, std::string& out) {
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    switch (n.kind) {
        case NodeKind::Action:
            out += action_keyword(n.action);
            out += '\n';
            return;
        case NodeKind::Repeat:
            out += "repeat " + std::to_string(n.count) + " {\n";
            break;
        case NodeKind::While:
            out += "while " + condition_text(n.condition) + " {\n";
            break;
        case NodeKind::If:
        case NodeKind::IfElse:
            out += "if " + condition_text(n.condition) + " {\n";
            break;
    }
    print_block(n.body, indent + 1, out);
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    if (n.kind == NodeKind::IfElse) {
        out += "} else {\n";
        print_block(n.else_body, indent + 1, out);
        out.append(static_cast<std::size_t>(indent) * 2, ' ');
    }
    out += "}\n";
}

void print_block(const Block& block, int indent, std::string& out) {
    for (const Node& n : block) print_node(n, indent, out);
}

int depth_of(const Block& block) {
    int d = 0;
    for (const Node& n : block) {
        int inner = std::max(depth_of(n.body), depth_of(n.else_body));
        d = std::max(d, 1 + inner);
    }
    return d;
}

int loops_in(const Block& block) {
    int total = 0;
    for (const Node& n : block) {
        total += (n.is_loop() ? 1 : 0) + loops_in(n.body) + loops_in(n.else_body);
    }
    return total;
}

}  // namespace

Program parse_program(std::string_view text) {
    return Parser(Lexer(text).run()).parse();
}

std::string print_program(const Program& program) {
    std::string out;
    print_block(program.statements, 0, out);
    return out;
}

int block_count(const Node& node) {
    return 1 + block_count(node.body) + block_count(node.else_body);
}

int block_count(const Block& block) {
    int total = 0;
    for (const Node& n : block) total += block_count(n);
    return total;
}

int block_count(const Program& program) {
    return block_count(program.statements);
}

int program_depth(const Program& program) {
    return depth_of(program.statements);
}

int loop_count(const Program& program) {
    return loops_in(program.statements);
}

Program literal_program(const std::vector<Action>& actions) {
    Program p;
    p.statements.reserve(actions.size());
    for (Action a : actions) p.statements.push_back(Node::make_action(a));
    return p;
}

}  // namespace mazemate
