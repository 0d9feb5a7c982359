#!/usr/bin/env python3
"""Regenerates core/src/font_glyphs.inc from DejaVu Sans Mono.

The PNG renderer draws axis labels and legend text with a fixed 7x11 bitmap
font so output bytes never depend on the host's font stack. Run this only
when the glyph table needs to change; the generated file is checked in.
"""
import sys
from PIL import Image, ImageDraw, ImageFont

FONT = "/usr/share/fonts/truetype/dejavu/DejaVuSansMono.ttf"
WIDTH, HEIGHT, TOP = 7, 11, 2
THRESHOLD = 110


def main(out_path):
    font = ImageFont.truetype(FONT, 11)
    lines = [
        "// Generated by tools/gen_font.py from DejaVu Sans Mono 11px. Do not edit.",
        "// One entry per printable ASCII character (0x20..0x7E), 11 rows each;",
        "// bit 6 of a row is the leftmost pixel.",
    ]
    for code in range(0x20, 0x7F):
        img = Image.new("L", (WIDTH, HEIGHT + TOP + 2), 0)
        ImageDraw.Draw(img).text((0, 0), chr(code), fill=255, font=font)
        rows = []
        for y in range(TOP, TOP + HEIGHT):
            bits = 0
            for x in range(WIDTH):
                if img.getpixel((x, y)) > THRESHOLD:
                    bits |= 1 << (WIDTH - 1 - x)
            rows.append(f"0x{bits:02x}")
        shown = chr(code).replace("\\", "backslash")
        lines.append("{" + ", ".join(rows) + "},  // " + shown)
    with open(out_path, "w") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "core/src/font_glyphs.inc")
