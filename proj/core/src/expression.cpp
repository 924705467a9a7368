#include "dirac/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "dirac/errors.hpp"

namespace dirac {

namespace {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind{};
    double value = 0.0;
    std::string ident;
    std::size_t pos = 0; // 0-based column of the first character
};

[[noreturn]] void fail(std::size_t pos, const std::string& what) {
    throw ConfigError("expression parse error at column " + std::to_string(pos) + ": " + what);
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    const std::string str(text); // stod needs a NUL-terminated buffer
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token tok;
        tok.pos = i;
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t consumed = 0;
            try {
                tok.value = std::stod(str.substr(i), &consumed);
            } catch (const std::exception&) {
                fail(i, "malformed number");
            }
            tok.kind = Token::Kind::Number;
            i += consumed;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            tok.kind = Token::Kind::Ident;
            tok.ident.assign(text.substr(i, j - i));
            i = j;
        } else {
            switch (c) {
            case '+': tok.kind = Token::Kind::Plus; break;
            case '-': tok.kind = Token::Kind::Minus; break;
            case '*': tok.kind = Token::Kind::Star; break;
            case '/': tok.kind = Token::Kind::Slash; break;
            case '^': tok.kind = Token::Kind::Caret; break;
            case '(': tok.kind = Token::Kind::LParen; break;
            case ')': tok.kind = Token::Kind::RParen; break;
            default: fail(i, std::string("unexpected character '") + c + "'");
            }
            ++i;
        }
        out.push_back(std::move(tok));
    }
    Token end;
    end.kind = Token::Kind::End;
    end.pos = text.size();
    out.push_back(end);
    return out;
}

} // namespace

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view text) : tokens_(tokenize(text)) {}

    Expression run(std::string_view text) {
        const int root = parse_expr();
        const Token& t = peek();
        if (t.kind != Token::Kind::End) fail(t.pos, "unexpected trailing input");
        (void)root; // root is by construction the last arena node

        Expression e;
        e.text_.assign(text);
        e.uses_x_ = uses_x_;
        e.uses_y_ = uses_y_;
        e.uses_t_ = uses_t_;
        e.nodes_ = std::make_shared<const std::vector<Expression::Node>>(std::move(nodes_));
        e.program_ = std::make_shared<const std::vector<Expression::Op>>(compile(*e.nodes_));
        return e;
    }

private:
    using Node = Expression::Node;
    using Op = Expression::Op;

    const Token& peek() const { return tokens_[cursor_]; }
    const Token& advance() { return tokens_[cursor_++]; }

    void expect(Token::Kind kind, const char* what) {
        const Token& t = peek();
        if (t.kind != kind) fail(t.pos, std::string("expected ") + what);
        ++cursor_;
    }

    int push(Node n) {
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size()) - 1;
    }

    int parse_expr() {
        int lhs = parse_term();
        while (true) {
            const Token& t = peek();
            if (t.kind == Token::Kind::Plus || t.kind == Token::Kind::Minus) {
                ++cursor_;
                const int rhs = parse_term();
                Node n;
                n.kind = t.kind == Token::Kind::Plus ? Node::Kind::Add : Node::Kind::Sub;
                n.lhs = lhs;
                n.rhs = rhs;
                lhs = push(n);
            } else {
                return lhs;
            }
        }
    }

    int parse_term() {
        int lhs = parse_factor();
        while (true) {
            const Token& t = peek();
            if (t.kind == Token::Kind::Star || t.kind == Token::Kind::Slash) {
                ++cursor_;
                const int rhs = parse_factor();
                Node n;
                n.kind = t.kind == Token::Kind::Star ? Node::Kind::Mul : Node::Kind::Div;
                n.lhs = lhs;
                n.rhs = rhs;
                lhs = push(n);
            } else {
                return lhs;
            }
        }
    }

    int parse_factor() {
        if (peek().kind == Token::Kind::Minus) {
            ++cursor_;
            Node n;
            n.kind = Node::Kind::Neg;
            n.lhs = parse_factor();
            return push(n);
        }
        return parse_power();
    }

    int parse_power() {
        const int base = parse_primary();
        if (peek().kind == Token::Kind::Caret) {
            ++cursor_;
            Node n;
            n.kind = Node::Kind::Pow;
            n.lhs = base;
            n.rhs = parse_factor(); // right-associative; allows 2^-3
            return push(n);
        }
        return base;
    }

    int parse_primary() {
        const Token& t = advance();
        switch (t.kind) {
        case Token::Kind::Number: {
            Node n;
            n.kind = Node::Kind::Num;
            n.value = t.value;
            return push(n);
        }
        case Token::Kind::LParen: {
            const int inner = parse_expr();
            expect(Token::Kind::RParen, "')'");
            return inner;
        }
        case Token::Kind::Ident: {
            Node n;
            if (t.ident == "x") {
                n.kind = Node::Kind::VarX;
                uses_x_ = true;
            } else if (t.ident == "y") {
                n.kind = Node::Kind::VarY;
                uses_y_ = true;
            } else if (t.ident == "t") {
                n.kind = Node::Kind::VarT;
                uses_t_ = true;
            } else if (t.ident == "pi") {
                n.kind = Node::Kind::Num;
                n.value = std::numbers::pi;
            } else if (t.ident == "sin" || t.ident == "cos" || t.ident == "exp") {
                expect(Token::Kind::LParen, "'(' after function name");
                n.kind = t.ident == "sin"   ? Node::Kind::Sin
                         : t.ident == "cos" ? Node::Kind::Cos
                                            : Node::Kind::Exp;
                n.lhs = parse_expr();
                expect(Token::Kind::RParen, "')'");
                return push(n);
            } else {
                fail(t.pos, "unknown identifier '" + t.ident + "'");
            }
            return push(n);
        }
        default: fail(t.pos, "expected a value");
        }
    }

    static std::vector<Op> compile(const std::vector<Node>& nodes) {
        // The arena is in postorder already (children are pushed before their
        // parent), so the postfix program is a node-for-node translation.
        std::vector<Op> program;
        program.reserve(nodes.size());
        for (const Node& n : nodes) {
            Op op;
            switch (n.kind) {
            case Node::Kind::Num:
                op.code = Op::Code::Push;
                op.imm = n.value;
                break;
            case Node::Kind::VarX: op.code = Op::Code::LoadX; break;
            case Node::Kind::VarY: op.code = Op::Code::LoadY; break;
            case Node::Kind::VarT: op.code = Op::Code::LoadT; break;
            case Node::Kind::Add: op.code = Op::Code::Add; break;
            case Node::Kind::Sub: op.code = Op::Code::Sub; break;
            case Node::Kind::Mul: op.code = Op::Code::Mul; break;
            case Node::Kind::Div: op.code = Op::Code::Div; break;
            case Node::Kind::Pow: op.code = Op::Code::Pow; break;
            case Node::Kind::Neg: op.code = Op::Code::Neg; break;
            case Node::Kind::Sin: op.code = Op::Code::Sin; break;
            case Node::Kind::Cos: op.code = Op::Code::Cos; break;
            case Node::Kind::Exp: op.code = Op::Code::Exp; break;
            }
            program.push_back(op);
        }
        return program;
    }

    std::vector<Token> tokens_;
    std::size_t cursor_ = 0;
    std::vector<Node> nodes_;
    bool uses_x_ = false, uses_y_ = false, uses_t_ = false;
};

Expression Expression::parse(std::string_view text) {
    ExpressionParser parser(text);
    return parser.run(text);
}

double Expression::eval(double x, double y, double t) const {
    // Fixed-size stack: the tree depth is bounded by the program length, and
    // a postfix program of length L never holds more than L operands.
    std::vector<double> stack;
    stack.reserve(program_->size());
    auto pop = [&stack] {
        const double v = stack.back();
        stack.pop_back();
        return v;
    };
    for (const Op& op : *program_) {
        switch (op.code) {
        case Op::Code::Push: stack.push_back(op.imm); break;
        case Op::Code::LoadX: stack.push_back(x); break;
        case Op::Code::LoadY: stack.push_back(y); break;
        case Op::Code::LoadT: stack.push_back(t); break;
        case Op::Code::Add: {
            const double b = pop();
            stack.back() += b;
            break;
        }
        case Op::Code::Sub: {
            const double b = pop();
            stack.back() -= b;
            break;
        }
        case Op::Code::Mul: {
            const double b = pop();
            stack.back() *= b;
            break;
        }
        case Op::Code::Div: {
            const double b = pop();
            stack.back() /= b;
            break;
        }
        case Op::Code::Pow: {
            const double b = pop();
            stack.back() = std::pow(stack.back(), b);
            break;
        }
        case Op::Code::Neg: stack.back() = -stack.back(); break;
        case Op::Code::Sin: stack.back() = std::sin(stack.back()); break;
        case Op::Code::Cos: stack.back() = std::cos(stack.back()); break;
        case Op::Code::Exp: stack.back() = std::exp(stack.back()); break;
        }
    }
    return stack.back();
}

double Expression::eval_tree(double x, double y, double t) const {
    struct Walker {
        const std::vector<Node>& nodes;
        double x, y, t;
        double visit(int i) const {
            const Node& n = nodes[static_cast<std::size_t>(i)];
            switch (n.kind) {
            case Node::Kind::Num: return n.value;
            case Node::Kind::VarX: return x;
            case Node::Kind::VarY: return y;
            case Node::Kind::VarT: return t;
            case Node::Kind::Add: return visit(n.lhs) + visit(n.rhs);
            case Node::Kind::Sub: return visit(n.lhs) - visit(n.rhs);
            case Node::Kind::Mul: return visit(n.lhs) * visit(n.rhs);
            case Node::Kind::Div: return visit(n.lhs) / visit(n.rhs);
            case Node::Kind::Pow: return std::pow(visit(n.lhs), visit(n.rhs));
            case Node::Kind::Neg: return -visit(n.lhs);
            case Node::Kind::Sin: return std::sin(visit(n.lhs));
            case Node::Kind::Cos: return std::cos(visit(n.lhs));
            case Node::Kind::Exp: return std::exp(visit(n.lhs));
            }
            throw ContractViolation("expression: corrupt node kind");
        }
    };
    const Walker w{*nodes_, x, y, t};
    return w.visit(static_cast<int>(nodes_->size()) - 1);
}

} // namespace dirac
