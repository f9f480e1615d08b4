"""Regenerate gpt2_golden.jsonl from the published GPT-2 model files.

Usage: python3 gen_gpt2_golden.py <encoder.json> <vocab.bpe> [gpt2.tiktoken]

Encodes every line with the Hugging Face `tokenizers` byte-level BPE
(GPT-2 configuration). If a tiktoken rank file is supplied, the ids are
cross-checked against `tiktoken` as well and the script aborts on any
disagreement.
"""

import base64
import json
import sys

from tokenizers import Tokenizer, decoders, models, pre_tokenizers

LINES = [
    "",
    " hello",
    "hello",
    "Hello world",
    "makan",
    " makan",
    "Saya makan nasi goreng.",
    "Kami pergi ke pasar pagi-pagi sekali.",
    "Anak-anak bermain di halaman sekolah.",
    "Pemerintah daerah sedang membangun jembatan baru.",
    "Bahasa Indonesia memiliki banyak kata serapan.",
    "Rumah makan itu sangat ramai pada akhir pekan.",
    "Dia membaca buku di perpustakaan.",
    "Mengapa kamu tidak datang kemarin?",
    "Harga cabai naik menjelang hari raya!",
    "Pelayanannya ramah, makanannya enak, tempatnya bersih.",
    "Kulo badhe tindak dhateng peken.",
    "Abdi bade angkat ka pasar.",
    "Tiang jagi lunga ka peken.",
    "Ulun handak tulak ka pasar.",
    "Ambo ka pai ka pasa.",
    "Au naeng laho tu onan.",
    "Lon jak u peukan.",
    "Engkae lao ri pasa'e.",
    "Sengko' entara ka pasar.",
    "Aku handak haguet akan pasar.",
    "The quick brown fox jumps over the lazy dog.",
    "I'm sure it's fine, we'll see what they've done.",
    "She said: \"don't do that\" and left.",
    "It's 3:45pm on 2024-02-29.",
    "Numbers: 0 1 12 123 1234 12345 123456",
    "3.14159 2.71828 1,000,000",
    "email@example.com https://example.org/path?q=1&r=2",
    "   leading spaces",
    "trailing spaces   ",
    "multiple     internal      spaces",
    "tab\tseparated\tvalues",
    "line one\nline two",
    "line one\n\nline three",
    "\n\n\n",
    " ",
    "  ",
    "\t",
    "a",
    "A",
    "aa aa aa aa",
    "!!!???...",
    "(parentheses) [brackets] {braces}",
    "snake_case and camelCase and kebab-case",
    "#hashtag @mention $dollar %percent ^caret &amp *star",
    "C++ and C# and F#",
    "def main():\n    return 0",
    "if (x < y) { return x; } else { return y; }",
    "<html><body>hi</body></html>",
    "'s 't 're 've 'm 'll 'd",
    "DON'T SHOUT, IT'S RUDE",
    "O'Neil's O'Reilly's",
    "naïve café résumé façade",
    "Crème brûlée à la carte",
    "soré kénéh énggal",
    "Köln Zürich München",
    "Ελληνικά γράμματα",
    "Русский текст здесь",
    "日本語のテキスト",
    "中文文本测试",
    "한국어 텍스트",
    "العربية نص",
    "עברית טקסט",
    "हिन्दी पाठ",
    "ꦗꦮ ꦲꦏ꧀ꦱꦫ",
    "ᮞᮥᮔ᮪ᮓ",
    "ᨅᨔ ᨕᨘᨁᨗ",
    "emoji 😀 test 🎉🎉",
    "👨‍👩‍👧‍👦 family",
    "flags 🇮🇩 🇯🇵",
    "math ∑ ∫ √ ∞ ≠ ≤ ≥",
    "arrows → ← ↑ ↓",
    "currency € £ ¥ ₹ ₩",
    "non\u00a0breaking\u00a0space",
    "zero\u200bwidth",
    "em—dash and en–dash",
    "“curly quotes” ‘single’",
    "ellipsis… done",
    "superscript² subscript₂",
    "Ｆｕｌｌｗｉｄｔｈ",
    "mixed 123abc abc123 1a2b3c",
    "UPPERCASE lowercase MiXeD",
    "penyakit menular seksual",
    "nyanyian burung di pagi hari",
    "struktur bangunan itu kokoh",
    "putra dan putri raja",
    "sastra klasik Melayu",
    "ngarai yang dalam",
    "khusus untuk syarat tertentu",
    "dharma dan karma",
    "kwalitas produk ekspor",
    "pemberdayaan masyarakat desa",
    "memperjuangkan hak-hak pekerja",
    "ketidakberdayaannya",
    "antidisestablishmentarianism",
    "supercalifragilisticexpialidocious",
    "aaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaa",
    "ababababababababababababababab",
    "Lorem ipsum dolor sit amet, consectetur adipiscing elit.",
    "Mereka berkata, \"Kami akan kembali besok.\"",
    "Harganya Rp 25.000,00 saja!",
    "Jl. Merdeka No. 17, Jakarta 10110",
    "Senin, 17 Agustus 1945",
    "Ini tidak enak sama sekali :(",
    "Mantap jiwa!!! 👍👍",
    "gpt-2 byte-level bpe",
    "<|endoftext|> is just text here",
    "\r\nwindows line ending",
    "end with newline\n",
]


def main():
    encoder_path, merges_path = sys.argv[1], sys.argv[2]
    tok = Tokenizer(models.BPE.from_file(encoder_path, merges_path))
    tok.pre_tokenizer = pre_tokenizers.ByteLevel(add_prefix_space=False)
    tok.decoder = decoders.ByteLevel()

    check = None
    if len(sys.argv) > 3:
        import tiktoken

        ranks = {}
        with open(sys.argv[3]) as f:
            for line in f:
                t, r = line.split()
                ranks[base64.b64decode(t)] = int(r)
        check = tiktoken.Encoding(
            name="gpt2_check",
            pat_str=r"""'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+""",
            mergeable_ranks=ranks,
            special_tokens={},
        )

    assert len(set(LINES)) == len(LINES), "duplicate fixture line"
    for line in LINES:
        ids = tok.encode(line).ids
        if check is not None:
            other = check.encode_ordinary(line)
            if other != ids:
                raise SystemExit(f"reference disagreement on {line!r}: {ids} vs {other}")
        print(json.dumps({"text": line, "ids": ids}, ensure_ascii=False))


if __name__ == "__main__":
    main()
